"""Self-checks of the analytic facts the transform relies on.

Each task returns VerificationRow items comparing a closed form with an
independent numeric evaluation. Exact table checks report the number of
failing entries against an expected 0.
"""

from math import e, pi, sqrt

from prefect import flow, get_run_logger, task
from prefect.cache_policies import NO_CACHE

from gompertz_wavelets import config, special_fn
from gompertz_wavelets.gompertz import MAX_DERIVATIVE_ORDER, gumbel_pdf
from gompertz_wavelets.models import VerificationRow
from gompertz_wavelets.quadrature import integrate_1d
from gompertz_wavelets.wavelets import (
    ADMISSIBILITY_MAX_ORDER,
    ChildWavelet,
    admissibility_constant,
    derivative_square_integral,
    derivative_square_quadrature,
    fourier_modulus_sq,
    fourier_modulus_sq_numeric,
    gompertz_integral_facts,
    mother_gompertz,
    mother_logistic2,
    spectral_energy,
    wavelet_mean,
    wavelet_norm,
)

QUADRATURE_TOLERANCE = 1e-8
ADMISSIBILITY_TOLERANCE = 1e-6
DFT_TOLERANCE = 1e-5
ZETA_TOLERANCE = 1e-13
FOURIER_CHECK_POINTS = (0.5, 1.0, 2.0, 5.0)


@task(name="check_integral_facts", cache_policy=NO_CACHE)
def check_integral_facts() -> list[VerificationRow]:
    facts = gompertz_integral_facts()
    gumbel = integrate_1d(gumbel_pdf, -30.0, 80.0, breakpoints=(0.0,))
    return [
        VerificationRow.compare("integral x''", 0.0, facts.mean, QUADRATURE_TOLERANCE),
        VerificationRow.compare("integral |x''|", 2 / e, facts.abs_integral, QUADRATURE_TOLERANCE),
        VerificationRow.compare("integral x''^2", 1 / 8, facts.sq_integral, QUADRATURE_TOLERANCE),
        VerificationRow.compare("integral gumbel pdf", 1.0, gumbel, QUADRATURE_TOLERANCE),
    ]


@task(name="check_square_integrals", cache_policy=NO_CACHE)
def check_square_integrals(max_order: int) -> list[VerificationRow]:
    return [
        VerificationRow.compare(
            f"integral (x^({n}))^2",
            float(derivative_square_integral(n)),
            derivative_square_quadrature(n),
            QUADRATURE_TOLERANCE,
        )
        for n in range(1, max_order + 1)
    ]


@task(name="check_wavelet_moments", cache_policy=NO_CACHE)
def check_wavelet_moments(max_order: int) -> list[VerificationRow]:
    rows = []
    mothers = [mother_gompertz(n) for n in range(2, max_order + 1)] + [mother_logistic2()]
    for w in mothers:
        rows.append(VerificationRow.compare(f"||{w.name}||", 1.0, wavelet_norm(w), QUADRATURE_TOLERANCE))
        rows.append(VerificationRow.compare(f"mean {w.name}", 0.0, wavelet_mean(w), QUADRATURE_TOLERANCE))

    child = ChildWavelet(mother=mother_gompertz(2), a=8.0, b=25.0)
    rows.append(
        VerificationRow.compare("||gompertz-2 (a=8, b=25)||", 1.0, wavelet_norm(child), QUADRATURE_TOLERANCE)
    )
    return rows


@task(name="check_admissibility", cache_policy=NO_CACHE)
def check_admissibility(max_order: int) -> list[VerificationRow]:
    logger = get_run_logger()
    rows = []
    for n in range(2, min(max_order, ADMISSIBILITY_MAX_ORDER) + 1):
        result = admissibility_constant(n)
        logger.info(f"C_psi({n}) = {result.closed_form:.12g}")
        rows.append(
            VerificationRow.compare(
                f"C_psi order {n}", result.closed_form, result.quadrature, ADMISSIBILITY_TOLERANCE
            )
        )
    rows.append(
        VerificationRow.compare(
            "C_psi order 2 = 56 zeta(3) / pi^2",
            56 * special_fn.zeta(3) / pi**2,
            admissibility_constant(2).closed_form,
            1e-12,
        )
    )
    return rows


@task(name="check_spectra", cache_policy=NO_CACHE)
def check_spectra(max_order: int) -> list[VerificationRow]:
    rows = [
        VerificationRow.compare(
            f"spectral energy gompertz-{n}", 1.0, spectral_energy(mother_gompertz(n)), QUADRATURE_TOLERANCE
        )
        for n in range(2, max_order + 1)
    ]
    w = mother_gompertz(2)
    rows += [
        VerificationRow.compare(
            f"|psi_hat_2({xi})|^2",
            fourier_modulus_sq(w, xi),
            fourier_modulus_sq_numeric(w, xi),
            DFT_TOLERANCE,
        )
        for xi in FOURIER_CHECK_POINTS
    ]
    return rows


@task(name="check_exact_tables", cache_policy=NO_CACHE)
def check_exact_tables() -> list[VerificationRow]:
    stirling_mismatches = sum(
        special_fn.stirling2(n, k) != special_fn.stirling2_explicit(n, k)
        for n in range(special_fn.STIRLING_MAX_N + 1)
        for k in range(n + 1)
    )
    bernoulli_failures = sum(
        not special_fn.bernoulli_recurrence_holds(n)
        for n in range(1, special_fn.BERNOULLI_MAX_INDEX)
    )
    rows = [
        VerificationRow.compare("stirling2 table vs explicit sum", 0.0, float(stirling_mismatches), 0.5),
        VerificationRow.compare("bernoulli recurrence failures", 0.0, float(bernoulli_failures), 0.5),
        VerificationRow.compare("normalization gompertz-2 = 2 sqrt(2)", 2 * sqrt(2), mother_gompertz(2).normalization, 1e-15),
        VerificationRow.compare("normalization gompertz-3 = 2", 2.0, mother_gompertz(3).normalization, 1e-15),
    ]
    rows += [
        VerificationRow.compare(
            f"zeta({2 * n}) from B_{2 * n}",
            special_fn.zeta(2 * n),
            special_fn.zeta_even_closed_form(n),
            ZETA_TOLERANCE,
        )
        for n in range(1, 5)
    ]
    return rows


@flow(name="verification-pipeline", log_prints=True)
def verification_pipeline(max_order: int = config.VERIFY_MAX_ORDER) -> list[VerificationRow]:
    logger = get_run_logger()
    max_order = min(max(int(max_order), 2), MAX_DERIVATIVE_ORDER)

    futures = [
        check_exact_tables.submit(),
        check_integral_facts.submit(),
        check_square_integrals.submit(max_order),
        check_wavelet_moments.submit(max_order),
        check_admissibility.submit(max_order),
        check_spectra.submit(max_order),
    ]
    rows = [row for future in futures for row in future.result()]

    failed = [row.check for row in rows if not row.passed]
    if failed:
        logger.error(f"{len(failed)} of {len(rows)} checks failed: {failed}")
    else:
        logger.info(f"All {len(rows)} checks passed")
    return rows


__all__ = ["verification_pipeline"]
