"""Splittings A = U - V: construction, classification, iteration matrices.

A splitting is stored with V derived as U - A, so the defining identity can
never drift.  Classification produces verdicts, never exceptions; the
constructive operations (induced splittings, closed forms) raise when their
hypotheses fail because their outputs are undefined otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    CachedSolver,
    ToleranceProfile,
    as_square,
    group_inverse,
    index_at_most_one,
    same_null,
    same_range,
)
from .errors import (
    DimensionMismatchError,
    MismatchedSplittingError,
    RangeNullConditionError,
    SingularIminusHError,
    ZeroDiagonalError,
)

__all__ = [
    "Splitting",
    "Witness",
    "SplittingClassReport",
    "make_splitting",
    "classify",
    "alternating_iteration_matrix",
    "companion_matrix",
    "induced_splitting",
    "b_sharp_closed_form",
    "diag_scaling_splitting",
]


@dataclass(frozen=True)
class Splitting:
    """One splitting A = U - V with its cached solver for U.

    ``v`` is always derived as ``u - a``; construct via
    :func:`make_splitting`.
    """

    a: np.ndarray
    u: np.ndarray
    v: np.ndarray
    solver: CachedSolver = field(repr=False)
    u_is_nonsingular: bool

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def iteration_matrix(self) -> np.ndarray:
        """Single-step iteration matrix U# V (U^-1 V when U is nonsingular)."""
        return self.solver.left_apply(self.v)

    def reversed_iteration_matrix(self) -> np.ndarray:
        """Companion-side factor V U#."""
        return self.solver.right_apply(self.v)


def make_splitting(a, u, tol: ToleranceProfile = DEFAULT_TOL) -> Splitting:
    """Build a splitting of ``a`` from the chosen ``u``; V := U - A.

    Raises
    ------
    DimensionMismatchError
        If A and U are not square matrices of the same order.
    IndexGreaterThanOneError
        If U is singular and U# does not exist.
    """
    a = as_square(a)
    u = as_square(u)
    if a.shape != u.shape:
        raise DimensionMismatchError(
            f"A has shape {a.shape} but U has shape {u.shape}"
        )
    solver = CachedSolver(u, tol)
    return Splitting(
        a=a, u=u, v=u - a, solver=solver, u_is_nonsingular=solver.is_nonsingular
    )


def diag_scaling_splitting(
    a, alpha: float, tol: ToleranceProfile = DEFAULT_TOL
) -> Splitting:
    """Splitting with U = alpha * diag(A).

    Raises
    ------
    ZeroDiagonalError
        If diag(A) contains a zero entry.
    """
    a = as_square(a)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    d = np.diag(a)
    if np.any(d == 0.0):
        raise ZeroDiagonalError("diag(A) has a zero entry")
    return make_splitting(a, np.diag(alpha * d), tol)


@dataclass(frozen=True)
class Witness:
    """Why a classification verdict is false.

    ``min_entry`` carries the most negative entry for sign failures and is
    None for structural failures (subspace mismatch, missing inverse, index).
    """

    check: str
    matrix: str
    min_entry: float | None = None

    def describe(self) -> str:
        if self.min_entry is None:
            return self.check
        return f"{self.check}: most negative entry of {self.matrix} is {self.min_entry:.6g}"


@dataclass(frozen=True)
class SplittingClassReport:
    """Verdicts for the ten splitting classes plus witnesses for failures."""

    is_proper: bool
    is_g_regular: bool
    is_g_weak_regular_type1: bool
    is_g_weak_regular_type2: bool
    is_regular: bool
    is_weak_regular_type1: bool
    is_weak_regular_type2: bool
    is_quasi_regular: bool
    is_quasi_weak_regular_type1: bool
    is_quasi_weak_regular_type2: bool
    witnesses: dict[str, Witness]

    def flags(self) -> dict[str, bool]:
        return {
            name: getattr(self, name)
            for name in (
                "is_proper",
                "is_g_regular",
                "is_g_weak_regular_type1",
                "is_g_weak_regular_type2",
                "is_regular",
                "is_weak_regular_type1",
                "is_weak_regular_type2",
                "is_quasi_regular",
                "is_quasi_weak_regular_type1",
                "is_quasi_weak_regular_type2",
            )
        }


def _sign_check(m: np.ndarray, name: str, check: str, tol: ToleranceProfile):
    """(verdict, witness-or-None) for an entrywise nonnegativity test."""
    lo = float(m.min()) if m.size else 0.0
    if lo >= -tol.nonneg_tol:
        return True, None
    return False, Witness(check=check, matrix=name, min_entry=lo)


def classify(s: Splitting, tol: ToleranceProfile = DEFAULT_TOL) -> SplittingClassReport:
    """Compute all ten class verdicts for one splitting.

    Failures are verdicts with witnesses, never exceptions.
    """
    witnesses: dict[str, Witness] = {}

    def record(verdict_name, ok, witness):
        if not ok and witness is not None and verdict_name not in witnesses:
            witnesses[verdict_name] = witness
        return ok

    proper = same_range(s.u, s.a, tol) and same_null(s.u, s.a, tol)
    if not proper:
        witnesses["is_proper"] = Witness(
            check="range(U) == range(A) and null(U) == null(A)", matrix="U"
        )

    # G-classes: proper splitting with U# >= 0 plus one product condition.
    u_sharp = s.solver.inverse_like()
    usharp_ok, w_usharp = _sign_check(u_sharp, "U#", "U# >= 0", tol)
    g_base = proper and usharp_ok
    base_witness = witnesses.get("is_proper") or w_usharp

    v_ok, w_v = _sign_check(s.v, "V", "V >= 0", tol)
    uv_ok, w_uv = _sign_check(s.solver.left_apply(s.v), "U#V", "U#V >= 0", tol)
    vu_ok, w_vu = _sign_check(s.solver.right_apply(s.v), "VU#", "VU# >= 0", tol)

    g_regular = record("is_g_regular", g_base and v_ok, base_witness or w_v)
    g_weak1 = record("is_g_weak_regular_type1", g_base and uv_ok, base_witness or w_uv)
    g_weak2 = record("is_g_weak_regular_type2", g_base and vu_ok, base_witness or w_vu)

    # Plain classes require a nonsingular U.
    if s.u_is_nonsingular:
        nonsing_witness = None if usharp_ok else w_usharp
        regular = record("is_regular", usharp_ok and v_ok, nonsing_witness or w_v)
        weak1 = record(
            "is_weak_regular_type1", usharp_ok and uv_ok, nonsing_witness or w_uv
        )
        weak2 = record(
            "is_weak_regular_type2", usharp_ok and vu_ok, nonsing_witness or w_vu
        )
    else:
        singular_w = Witness(check="U is singular", matrix="U")
        regular = record("is_regular", False, singular_w)
        weak1 = record("is_weak_regular_type1", False, singular_w)
        weak2 = record("is_weak_regular_type2", False, singular_w)

    # Quasi classes: nonnegativity after the unit-eigenvalue component of
    # the iteration matrix is projected away.
    quasi_names = (
        "is_quasi_regular",
        "is_quasi_weak_regular_type1",
        "is_quasi_weak_regular_type2",
    )
    if not s.u_is_nonsingular:
        w = Witness(check="U is singular", matrix="U")
        q_reg = record(quasi_names[0], False, w)
        q_w1 = record(quasi_names[1], False, w)
        q_w2 = record(quasi_names[2], False, w)
    else:
        eye = np.eye(s.n)
        t1 = eye - s.solver.left_apply(s.v)   # I - U^-1 V
        t2 = eye - s.solver.right_apply(s.v)  # I - V U^-1
        if not (index_at_most_one(t1, tol) and index_at_most_one(t2, tol)):
            w = Witness(
                check="index(I - U^-1 V) or index(I - V U^-1) exceeds 1",
                matrix="I - U^-1 V",
            )
            q_reg = record(quasi_names[0], False, w)
            q_w1 = record(quasi_names[1], False, w)
            q_w2 = record(quasi_names[2], False, w)
        else:
            k1 = t1 @ group_inverse(t1, tol)
            k2 = group_inverse(t2, tol) @ t2
            qv_ok, w_qv = _sign_check(s.v @ k1, "V K1", "V K1 >= 0", tol)
            quv_ok, w_quv = _sign_check(
                s.solver.left_apply(s.v) @ k1, "U^-1 V K1", "U^-1 V K1 >= 0", tol
            )
            qvu_ok, w_qvu = _sign_check(
                k2 @ s.solver.right_apply(s.v), "K2 V U^-1", "K2 V U^-1 >= 0", tol
            )
            nonsing_witness = None if usharp_ok else w_usharp
            q_reg = record(quasi_names[0], usharp_ok and qv_ok, nonsing_witness or w_qv)
            q_w1 = record(quasi_names[1], usharp_ok and quv_ok, nonsing_witness or w_quv)
            q_w2 = record(quasi_names[2], usharp_ok and qvu_ok, nonsing_witness or w_qvu)

    return SplittingClassReport(
        is_proper=proper,
        is_g_regular=g_regular,
        is_g_weak_regular_type1=g_weak1,
        is_g_weak_regular_type2=g_weak2,
        is_regular=regular,
        is_weak_regular_type1=weak1,
        is_weak_regular_type2=weak2,
        is_quasi_regular=q_reg,
        is_quasi_weak_regular_type1=q_w1,
        is_quasi_weak_regular_type2=q_w2,
        witnesses=witnesses,
    )


def _check_shared_a(splits, tol: ToleranceProfile):
    if not 1 <= len(splits) <= 3:
        raise ValueError("expected between 1 and 3 splittings")
    a = splits[0].a
    for s in splits[1:]:
        if s.a.shape != a.shape or float(np.max(np.abs(s.a - a))) > tol.eq_tol:
            raise MismatchedSplittingError(
                "all splittings must share the same coefficient matrix"
            )
    return a


def alternating_iteration_matrix(
    splits, tol: ToleranceProfile = DEFAULT_TOL
) -> np.ndarray:
    """Iteration matrix of the alternating sweep, first splitting applied first.

    For splittings [K-L, U-V, X-Y] this is (X#Y)(U#V)(K#L); ordinary
    inverses replace group inverses wherever U is nonsingular.
    """
    _check_shared_a(splits, tol)
    h = None
    for s in splits:
        t = s.iteration_matrix()
        h = t if h is None else t @ h
    return h


def companion_matrix(splits, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Reversed-order companion matrix, (YX#)(VU#)(LK#) for three splittings.

    Shares its spectral radius with the alternating iteration matrix and is
    the nonnegativity carrier in the type-II convergence arguments.
    """
    _check_shared_a(splits, tol)
    c = None
    for s in splits:
        r = s.reversed_iteration_matrix()
        c = r if c is None else r @ c
    return c


def induced_splitting(a, h, tol: ToleranceProfile = DEFAULT_TOL) -> Splitting:
    """The unique splitting A = B - C with B#C = H, where B = A (I - H)^-1.

    Raises
    ------
    SingularIminusHError
        If I - H is singular at ``rank_tol``.
    """
    a = as_square(a)
    h = as_square(h)
    if a.shape != h.shape:
        raise DimensionMismatchError("A and H must have the same shape")
    imh = np.eye(h.shape[0]) - h
    s = np.linalg.svd(imh, compute_uv=False)
    if s.size == 0 or s[-1] <= tol.rank_tol * s[0]:
        raise SingularIminusHError("I - H is singular; no induced splitting")
    b = np.linalg.solve(imh.T, a.T).T
    return make_splitting(a, b, tol)


def b_sharp_closed_form(splits, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Closed form X#(K + X - A + Y U# L)K# for the induced B's group inverse.

    Requires exactly three splittings of one matrix A plus the range/null
    condition on the middle factor.

    Raises
    ------
    RangeNullConditionError
        If range/null of K + X - A + Y U# L differ from those of A.
    """
    if len(splits) != 3:
        raise ValueError("closed form needs exactly three splittings")
    a = _check_shared_a(splits, tol)
    sk, su, sx = splits
    middle = sk.u + sx.u - a + sx.v @ su.solver.left_apply(sk.v)
    if not (same_range(middle, a, tol) and same_null(middle, a, tol)):
        raise RangeNullConditionError(
            "K + X - A + Y U# L does not share range/null with A"
        )
    return sx.solver.left_apply(sk.solver.right_apply(middle))
