from . import synthetic_data_generator, verification, wave_analysis

__all__ = ["synthetic_data_generator", "verification", "wave_analysis"]
