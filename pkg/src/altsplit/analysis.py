"""Semiconvergence machinery and executable theorem verifiers.

Verifiers certify hypotheses and conclusions of the convergence and
semiconvergence results on concrete splitting instances.  They are
instance-level checks, not proof checkers: on any instance where every
hypothesis holds, the conclusion must hold, and the test suites treat a
violation as a failure rather than a data point.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    ToleranceProfile,
    as_square,
    gamma,
    group_inverse,
    index_at_most_one,
    is_nonnegative,
    rank,
    same_null,
    same_range,
    spectral_radius,
)
from .errors import (
    ClassificationError,
    MissingDeltaError,
    NonsingularHypothesisError,
    UnknownTheoremError,
)
from .splittings import (
    Splitting,
    _check_shared_a,
    alternating_iteration_matrix,
    classify,
    induced_splitting,
    make_splitting,
)

__all__ = [
    "SemiconvergenceCertificate",
    "TheoremVerdict",
    "CONVERGENCE_THEOREMS",
    "SEMICONVERGENCE_THEOREMS",
    "is_semiconvergent",
    "power_limit_oracle",
    "is_m_matrix_with_property_c",
    "verify_convergence_theorem",
    "verify_semiconvergence_theorem",
    "induced_regular_splitting",
]

# Comparison conclusions are asserted with this much numerical slack.
COMPARISON_SLACK = 1e-10


@dataclass(frozen=True)
class SemiconvergenceCertificate:
    """Spectral facts deciding whether lim T^k exists.

    ``verdict`` is true iff rho(T) <= 1 (up to the eigenvalue-1 slack),
    gamma(T) < 1 and index(I - T) <= 1; the limit matrix
    I - (I-T)(I-T)# is attached only then.
    """

    rho: float
    gamma: float
    has_eigenvalue_one: bool
    index_of_I_minus_T: int
    verdict: bool
    limit_matrix: np.ndarray | None = None


@dataclass(frozen=True)
class TheoremVerdict:
    """Instance-level certification of one theorem's hypotheses/conclusion."""

    theorem_id: str
    hypotheses_hold: bool
    hypothesis_failures: list[str]
    conclusion_holds: bool
    measured_quantities: dict[str, float] = field(default_factory=dict)


def is_semiconvergent(
    t, tol: ToleranceProfile = DEFAULT_TOL
) -> SemiconvergenceCertificate:
    """Certify semiconvergence of T from its dense spectrum.

    When no eigenvalue sits within ``one_tol`` of 1 the test reduces to
    plain zero-convergence rho(T) < 1.  The gamma < 1 test carries a
    ``one_tol`` margin so boundary eigenvalues other than 1 (whose moduli
    round off to just below 1) do not slip through.
    """
    t = as_square(t)
    n = t.shape[0]
    ev = np.linalg.eigvals(t) if n else np.array([])
    rho = float(np.max(np.abs(ev))) if n else 0.0
    near_one = np.abs(ev - 1.0) <= tol.one_tol if n else np.array([], dtype=bool)
    has_one = bool(np.any(near_one))
    g = float(np.max(np.abs(ev[~near_one]))) if np.any(~near_one) else 0.0

    imt = np.eye(n) - t
    # When T is numerically the identity, I - T is pure round-off and its
    # relative rank is meaningless; anchor at T's unit scale instead.
    if n and float(np.max(np.abs(imt))) <= tol.rank_tol:
        return SemiconvergenceCertificate(
            rho=rho,
            gamma=0.0,
            has_eigenvalue_one=True,
            index_of_I_minus_T=1,
            verdict=True,
            limit_matrix=np.eye(n),
        )
    idx_ok = rank(imt, tol) == rank(imt @ imt, tol)
    index_of = 1 if idx_ok else 2

    verdict = (rho <= 1.0 + tol.one_tol) and (g < 1.0 - tol.one_tol) and idx_ok
    limit = None
    if verdict:
        limit = np.eye(n) - imt @ group_inverse(imt, tol)
    return SemiconvergenceCertificate(
        rho=rho,
        gamma=g,
        has_eigenvalue_one=has_one,
        index_of_I_minus_T=index_of,
        verdict=verdict,
        limit_matrix=limit,
    )


def power_limit_oracle(
    t, k_max: int = 5_000, tol: ToleranceProfile = DEFAULT_TOL
) -> np.ndarray | None:
    """Brute-force limit of T^k by repeated multiplication, or None.

    Independent oracle for :func:`is_semiconvergent` on small matrices:
    returns T^k once consecutive powers differ by less than ``eq_tol``
    entrywise, and None when powers blow up, oscillate or fail to settle
    within ``k_max`` steps.
    """
    t = as_square(t)
    p = t.copy()
    for _ in range(k_max):
        if float(np.max(np.abs(p))) > 1e12:
            return None
        q = p @ t
        if float(np.max(np.abs(q - p))) < tol.eq_tol:
            return q
        p = q
    return None


def is_m_matrix_with_property_c(a, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True iff A = sI - B with B >= 0, s >= rho(B) and s^-1 B semiconvergent.

    Off-diagonal entries must be nonpositive.  Property c is existential in
    s, and the minimal choice s = max(diag) can place spurious boundary
    eigenvalues (e.g. -1) on the unit circle of s^-1 B, so s is enlarged
    until s^-1 B has a strictly positive diagonal; the M-matrix verdict
    itself is unchanged by any valid choice of s.
    """
    a = as_square(a)
    n = a.shape[0]
    off = a - np.diag(np.diag(a))
    if off.size and float(off.max()) > tol.nonneg_tol:
        return False
    s0 = max(0.0, float(np.max(np.diag(a))) if n else 0.0)
    s = s0 + max(1.0, s0)
    b = s * np.eye(n) - a
    if spectral_radius(b) > s * (1.0 + tol.one_tol):
        return False
    return is_semiconvergent(b / s, tol).verdict


# ---------------------------------------------------------------------------
# theorem verifiers
# ---------------------------------------------------------------------------

CONVERGENCE_THEOREMS = (
    "typeII-convergence",
    "single-vs-three",
    "both-types-comparison",
    "two-vs-three",
)

SEMICONVERGENCE_THEOREMS = (
    "regular-three-step",
    "delta-shift",
    "induced-regular",
    "quasi-three-step",
    "quasi-comparison",
    "quasi-three-comparison",
    "quasi-two-vs-three",
)


def _ge_identity(m: np.ndarray, slack: float) -> bool:
    return float(np.min(m - np.eye(m.shape[0]))) >= -slack


def _group_monotone(a, tol):
    """(holds, reason) for A# exists with A# >= 0."""
    if not index_at_most_one(a, tol):
        return False, "A has index greater than 1"
    if not is_nonnegative(group_inverse(a, tol), tol):
        return False, "A# has negative entries"
    return True, ""


def _middle_factor(splits):
    """K + X - A + Y U# L for three splittings (U# L via the cached solver)."""
    sk, su, sx = splits
    return sk.u + sx.u - sk.a + sx.v @ su.solver.left_apply(sk.v)


def _pairwise_products(splits):
    """H12 = U#V K#L, H13 = X#Y K#L, H23 = X#Y U#V."""
    tk, tu, tx = (s.iteration_matrix() for s in splits)
    return tu @ tk, tx @ tk, tx @ tu


def verify_convergence_theorem(
    theorem_id: str, splits, tol: ToleranceProfile = DEFAULT_TOL
) -> TheoremVerdict:
    """Certify one of the index-1 convergence/comparison results.

    ``theorem_id`` is one of ``typeII-convergence``, ``single-vs-three``,
    ``both-types-comparison``, ``two-vs-three`` (all expect three splittings
    of one matrix A).
    """
    if theorem_id not in CONVERGENCE_THEOREMS:
        raise UnknownTheoremError(f"unknown convergence theorem {theorem_id!r}")
    splits = tuple(splits)
    if len(splits) != 3:
        raise ValueError(f"{theorem_id} expects exactly three splittings")
    a = _check_shared_a(splits, tol)

    failures: list[str] = []
    measured: dict[str, float] = {}

    gm, why = _group_monotone(a, tol)
    if not gm:
        failures.append(f"A is not group monotone: {why}")

    reports = [classify(s, tol) for s in splits]
    names = ("K-L", "U-V", "X-Y")
    for name, rep in zip(names, reports):
        if not rep.is_g_weak_regular_type2:
            failures.append(f"{name} is not a proper G-weak regular splitting of type II")

    h = alternating_iteration_matrix(splits, tol)
    rho_h = spectral_radius(h)
    measured["rho_H"] = rho_h
    single_radii = {}
    for name, s in zip(names, splits):
        r = spectral_radius(s.iteration_matrix())
        single_radii[name] = r
        measured[f"rho_{name}"] = r

    if theorem_id == "typeII-convergence":
        conclusion = rho_h < 1.0
        return TheoremVerdict(
            theorem_id, not failures, failures, conclusion, measured
        )

    middle = _middle_factor(splits)
    range_null_ok = same_range(middle, a, tol) and same_null(middle, a, tol)
    if not range_null_ok:
        failures.append("K + X - A + Y U# L does not share range/null with A")

    if theorem_id == "both-types-comparison":
        for name, rep in zip(names, reports):
            if not rep.is_g_weak_regular_type1:
                failures.append(
                    f"{name} is not a proper G-weak regular splitting of type I"
                )
        floor = min(single_radii.values())
        measured["min_single_rho"] = floor
        conclusion = rho_h <= floor + COMPARISON_SLACK and floor < 1.0
        return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)

    # The remaining two theorems need the splitting induced by H.
    if rho_h >= 1.0:
        failures.append("rho(H) >= 1, no induced splitting")
        return TheoremVerdict(theorem_id, False, failures, False, measured)
    induced = induced_splitting(a, h, tol)
    induced_rep = classify(induced, tol)
    if not induced_rep.is_g_weak_regular_type2:
        failures.append("induced splitting A = B - C is not type II")
    b_sharp = induced.solver.inverse_like()

    if theorem_id == "single-vs-three":
        for name, s in zip(names, splits):
            if not _ge_identity(s.u @ b_sharp, tol.eq_tol):
                failures.append(f"{name.split('-')[0]} B# >= I fails")
        floor = min(single_radii.values())
        measured["min_single_rho"] = floor
        conclusion = rho_h <= floor + COMPARISON_SLACK and floor < 1.0
        return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)

    # two-vs-three
    pair_names = ("B12", "B13", "B23")
    pair_products = _pairwise_products(splits)
    pair_radii = []
    for name, hp in zip(pair_names, pair_products):
        rp = spectral_radius(hp)
        pair_radii.append(rp)
        measured[f"rho_{name}"] = rp
        if rp >= 1.0:
            failures.append(f"rho of the {name} product >= 1, no induced splitting")
            continue
        ind = induced_splitting(a, hp, tol)
        if not classify(ind, tol).is_g_weak_regular_type2:
            failures.append(f"induced splitting {name} is not type II")
        if not _ge_identity(ind.u @ b_sharp, tol.eq_tol):
            failures.append(f"{name} B# >= I fails")
    floor = min(pair_radii)
    measured["min_pairwise_rho"] = floor
    conclusion = rho_h <= floor + COMPARISON_SLACK and floor < 1.0
    return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)


def _quasi_flags(report):
    return {
        "regular": report.is_quasi_regular,
        "type1": report.is_quasi_weak_regular_type1,
        "type2": report.is_quasi_weak_regular_type2,
    }


def _induced_from_pair(first: Splitting, second: Splitting, tol):
    """Induced splitting of the two-step product via B = U1 (U1+U2-A)^-1 U2.

    Valid for nonsingular parts even when A itself is singular, where
    A (I-H)^-1 is unavailable because 1 is an eigenvalue of H.
    """
    a = first.a
    middle = first.u + second.u - a
    s = np.linalg.svd(middle, compute_uv=False)
    if s.size == 0 or s[-1] <= tol.rank_tol * s[0]:
        raise NonsingularHypothesisError("U1 + U2 - A is singular")
    b = first.u @ np.linalg.solve(middle, second.u)
    return make_splitting(a, b, tol)


def _induced_from_triple(splits, tol):
    """Induced splitting of the three-step product via B = K M^-1 X."""
    a = splits[0].a
    middle = _middle_factor(splits)
    s = np.linalg.svd(middle, compute_uv=False)
    if s.size == 0 or s[-1] <= tol.rank_tol * s[0]:
        raise NonsingularHypothesisError("K + X - A + Y U^-1 L is singular")
    b = splits[0].u @ np.linalg.solve(middle, splits[2].u)
    return make_splitting(a, b, tol)


def verify_semiconvergence_theorem(
    theorem_id: str,
    splits,
    tol: ToleranceProfile = DEFAULT_TOL,
    delta: float | None = None,
) -> TheoremVerdict:
    """Certify one of the semiconvergence results for singular systems.

    ``theorem_id`` is one of ``regular-three-step``, ``delta-shift``,
    ``induced-regular``, ``quasi-three-step``, ``quasi-comparison``,
    ``quasi-three-comparison``, ``quasi-two-vs-three``.  All expect three
    splittings with nonsingular split parts; ``delta-shift`` additionally
    needs ``delta``.
    """
    if theorem_id not in SEMICONVERGENCE_THEOREMS:
        raise UnknownTheoremError(f"unknown semiconvergence theorem {theorem_id!r}")
    splits = tuple(splits)
    if len(splits) != 3:
        raise ValueError(f"{theorem_id} expects exactly three splittings")
    a = _check_shared_a(splits, tol)
    n = a.shape[0]
    eye = np.eye(n)

    failures: list[str] = []
    measured: dict[str, float] = {}
    names = ("K-L", "U-V", "X-Y")

    for name, s in zip(names, splits):
        if not s.u_is_nonsingular:
            failures.append(f"{name} has a singular split part")
    if failures:
        return TheoremVerdict(theorem_id, False, failures, False, measured)

    reports = [classify(s, tol) for s in splits]
    singles = [s.iteration_matrix() for s in splits]
    h = alternating_iteration_matrix(splits, tol)
    measured["gamma_H"] = gamma(h, tol)
    measured["rho_H"] = spectral_radius(h)
    for name, t in zip(names, singles):
        measured[f"gamma_{name}"] = gamma(t, tol)
        # Both index variants appear across the statements; surface both.
        measured[f"index_le1_{name}"] = float(index_at_most_one(t, tol))
        measured[f"index_le1_I_minus_{name}"] = float(index_at_most_one(eye - t, tol))

    if theorem_id in ("regular-three-step", "delta-shift", "induced-regular"):
        if not is_m_matrix_with_property_c(a, tol):
            failures.append("A is not an M-matrix with property c")
        for name, rep in zip(names, reports):
            if not rep.is_regular:
                failures.append(f"{name} is not a regular splitting")
        middle = _middle_factor(splits)
        middle_rank = rank(middle, tol)
        measured["middle_nonsingular"] = float(middle_rank == n)
        if middle_rank != n:
            failures.append("K + X - A + Y U^-1 L is singular")

        if theorem_id == "regular-three-step":
            diag_min = float(np.min(np.diag(h)))
            measured["min_diag_H"] = diag_min
            if diag_min <= 0.0:
                failures.append("diag(H) is not strictly positive")
            conclusion = is_semiconvergent(h, tol).verdict
            return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)

        if theorem_id == "delta-shift":
            if delta is None:
                raise MissingDeltaError("delta-shift theorem needs delta")
            if not 0.0 < delta < 1.0:
                raise ValueError("delta must lie in (0, 1)")
            h_delta = delta * h + (1.0 - delta) * eye
            measured["gamma_H_delta"] = gamma(h_delta, tol)
            conclusion = is_semiconvergent(h_delta, tol).verdict
            return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)

        # induced-regular: the candidate B = K M^-1 X reproduces H as a
        # weak regular splitting of type I.  Strict regularity (C >= 0) can
        # fail for this candidate even under the stated hypotheses (the
        # walk benchmark is a witness), so the checkable conclusion is the
        # weak form; min(C) is surfaced for inspection.
        if failures:
            return TheoremVerdict(theorem_id, False, failures, False, measured)
        try:
            ind = _induced_from_triple(splits, tol)
        except NonsingularHypothesisError:
            failures.append("K + X - A + Y U^-1 L is singular")
            return TheoremVerdict(theorem_id, False, failures, False, measured)
        match = float(np.max(np.abs(ind.iteration_matrix() - h)))
        measured["induced_matrix_mismatch"] = match
        measured["min_B_inverse_entry"] = float(np.min(ind.solver.inverse_like()))
        measured["min_C_entry"] = float(np.min(ind.v))
        conclusion = (
            is_nonnegative(ind.solver.inverse_like(), tol)
            and is_nonnegative(h, tol)
            and match < tol.eq_tol * max(1.0, float(np.max(np.abs(h))))
        )
        return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)

    # quasi family -----------------------------------------------------
    quasi = [_quasi_flags(rep) for rep in reports]
    certs = [is_semiconvergent(t, tol) for t in singles]
    for name, c in zip(names, certs):
        measured[f"semiconvergent_{name}"] = float(c.verdict)

    if theorem_id == "quasi-three-step":
        common = [kind for kind in ("type1", "type2", "regular")
                  if all(q[kind] for q in quasi)]
        if not common:
            failures.append("splittings do not share a quasi class")
        for name, c in zip(names, certs):
            if not c.verdict:
                failures.append(f"{name} iteration matrix is not semiconvergent")
        # index conditions exactly as stated
        for name, t in zip(names, singles):
            if not index_at_most_one(t, tol):
                failures.append(f"index({name} iteration matrix) > 1")
        h12 = singles[1] @ singles[0]
        if not index_at_most_one(eye - h12, tol):
            failures.append("index(I - U^-1 V K^-1 L) > 1")
        if not index_at_most_one(h, tol):
            failures.append("index(H) > 1")
        cert = is_semiconvergent(h, tol)
        conclusion = cert.verdict
        if conclusion and common:
            try:
                ind = _induced_from_triple(splits, tol)
                ind_rep = classify(ind, tol)
                ind_flags = _quasi_flags(ind_rep)
                measured["induced_same_quasi_class"] = float(
                    any(ind_flags[kind] for kind in common)
                )
                conclusion = conclusion and any(ind_flags[kind] for kind in common)
            except NonsingularHypothesisError:
                # Induced-splitting clause is unverifiable without the
                # nonsingular middle factor; the semiconvergence conclusion
                # stands on its own.
                measured["induced_same_quasi_class"] = float("nan")
        return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)

    if theorem_id == "quasi-comparison":
        if not (quasi[0]["regular"] and certs[0].verdict):
            failures.append("K-L is not a semiconvergent quasi-regular splitting")
        for name, q in zip(names[1:], quasi[1:]):
            if not q["type1"]:
                failures.append(f"{name} is not quasi weak regular of type I")
        for name, t in zip(names, singles):
            if not index_at_most_one(eye - t, tol):
                failures.append(f"index(I - {name} iteration matrix) > 1")
        if not index_at_most_one(eye - h, tol):
            failures.append("index(I - H) > 1")
        bound = measured["gamma_X-Y"]
        conclusion = measured["gamma_H"] <= bound + COMPARISON_SLACK and bound < 1.0
        return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)

    if theorem_id == "quasi-three-comparison":
        for name, q, c in zip(names, quasi, certs):
            if not q["regular"]:
                failures.append(f"{name} is not a quasi-regular splitting")
            if not c.verdict:
                failures.append(f"{name} iteration matrix is not semiconvergent")
        for name, t in zip(names, singles):
            if not index_at_most_one(eye - t, tol):
                failures.append(f"index(I - {name} iteration matrix) > 1")
        if not index_at_most_one(eye - h, tol):
            failures.append("index(I - H) > 1")
        bound = min(measured[f"gamma_{name}"] for name in names)
        measured["min_single_gamma"] = bound
        conclusion = measured["gamma_H"] <= bound + COMPARISON_SLACK and bound < 1.0
        return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)

    # quasi-two-vs-three
    for name, q, c in zip(names, quasi, certs):
        if not q["regular"]:
            failures.append(f"{name} is not a quasi-regular splitting")
        if not c.verdict:
            failures.append(f"{name} iteration matrix is not semiconvergent")
    pairs = ((splits[0], splits[1], "B12"), (splits[0], splits[2], "B13"),
             (splits[1], splits[2], "B23"))
    pair_gammas = []
    for first, second, name in pairs:
        hp = second.iteration_matrix() @ first.iteration_matrix()
        gp = gamma(hp, tol)
        pair_gammas.append(gp)
        measured[f"gamma_{name}"] = gp
        if not index_at_most_one(np.eye(n) - hp, tol):
            failures.append(f"index(I - {name} product) > 1")
        try:
            ind = _induced_from_pair(first, second, tol)
            if not classify(ind, tol).is_quasi_regular:
                failures.append(f"induced splitting {name} is not quasi-regular")
        except NonsingularHypothesisError:
            failures.append(f"{name} middle factor is singular")
    for name, t in zip(names, singles):
        if not index_at_most_one(eye - t, tol):
            failures.append(f"index(I - {name} iteration matrix) > 1")
    if not index_at_most_one(eye - h, tol):
        failures.append("index(I - H) > 1")
    bound = min(pair_gammas)
    measured["min_pairwise_gamma"] = bound
    conclusion = measured["gamma_H"] <= bound + COMPARISON_SLACK and bound < 1.0
    return TheoremVerdict(theorem_id, not failures, failures, conclusion, measured)


def induced_regular_splitting(
    splits, tol: ToleranceProfile = DEFAULT_TOL
) -> Splitting:
    """Regular splitting A = B - C with B^-1 C equal to the three-step matrix.

    B is built as K (K + X - A + Y U^-1 L)^-1 X, which coincides with
    A (I - H)^-1 whenever the latter exists and remains well defined for
    singular A, where 1 is an eigenvalue of H.

    Raises
    ------
    ClassificationError
        If any input splitting fails to classify as regular.
    NonsingularHypothesisError
        If K + X - A + Y U^-1 L is singular.
    """
    splits = tuple(splits)
    if len(splits) != 3:
        raise ValueError("expected exactly three splittings")
    _check_shared_a(splits, tol)
    for label, s in zip(("K-L", "U-V", "X-Y"), splits):
        if not classify(s, tol).is_regular:
            raise ClassificationError(f"{label} is not a regular splitting")
    ind = _induced_from_triple(splits, tol)
    h = alternating_iteration_matrix(splits, tol)
    scale = max(1.0, float(np.max(np.abs(h))))
    b_inv = ind.solver.inverse_like()
    if not is_nonnegative(b_inv, tol):
        raise NonsingularHypothesisError("induced B^-1 has negative entries")
    if not is_nonnegative(ind.v, tol):
        raise NonsingularHypothesisError("induced C = B - A has negative entries")
    if float(np.max(np.abs(ind.iteration_matrix() - h))) > tol.eq_tol * scale:
        raise NonsingularHypothesisError("induced splitting does not reproduce H")
    return ind
