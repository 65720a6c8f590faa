"""Closed forms for diameter, closeness and vertex residual closeness of H(k, n).

Every formula is evaluated in exact rational arithmetic (``Fraction``) and only
rounded to a double at the end, so a formula and the brute-force oracle can be
compared at tight absolute tolerances.  Each result carries a trace naming the
single case that fired and the intermediate quantities it consumed.  Parameter
regions with no published closed form come back as ``NOT_COVERED`` rather than
raising.

Diameters consumed by the closeness and residual formulas come from
:func:`diameter_formula`, never from BFS, so every formula here is O(1).
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from .graphs import HararyParams, ParameterError, ParityCase

#: Residual closeness of the four small k=3, odd-n graphs that have no general formula.
SMALL_K3_RESIDUALS = {
    5: Fraction(5),
    7: Fraction(11),
    9: Fraction(35, 2),
    11: Fraction(199, 8),
}


class Coverage(enum.Enum):
    COVERED = "Covered"
    NOT_COVERED = "NotCoveredByPaper"


class DiameterRule(enum.Enum):
    """Which diameter rule to use for odd k > 3 with odd n.

    ``PUBLISHED`` adds one to ``ceil(n / (2k-2))`` only when
    ``(n-k-1) mod 2(k-1) == 1``.  That is right for k = 5 but misses the
    residues ``3, 5, ..., k-4`` for k >= 7.  ``EXACT`` adds one for every
    residue ``<= k-4`` and agrees with BFS everywhere it has been swept.  All
    other parity cases are identical under both rules.
    """

    EXACT = "exact"
    PUBLISHED = "published"


class ResidueRule(enum.Enum):
    EVEN_K = "EvenK"
    ODD_K_EVEN_N = "OddKEvenN"
    ODD_K_ODD_N = "OddKOddN"
    K3_ODD = "K3Odd"


@dataclass(frozen=True)
class FormulaTrace:
    theorem_id: str
    t: Optional[int] = None
    t_modulus: Optional[int] = None
    diam: Optional[int] = None
    inner_diam: Optional[int] = None
    inner_diam_parity: Optional[str] = None
    A: Optional[Fraction] = None
    B: Optional[Fraction] = None
    D_v: Optional[Fraction] = None
    closeness: Optional[Fraction] = None

    def as_dict(self) -> dict:
        """JSON-friendly view; unused fields dropped, rationals as floats."""
        out = {}
        for key, val in asdict(self).items():
            if val is None:
                continue
            out[key] = float(val) if isinstance(val, Fraction) else val
        return out


@dataclass(frozen=True)
class FormulaResult:
    exact: Optional[Fraction]
    coverage: Coverage
    trace: FormulaTrace

    @property
    def value(self) -> Optional[float]:
        return None if self.exact is None else float(self.exact)

    @property
    def covered(self) -> bool:
        return self.coverage is Coverage.COVERED


def _covered(value, theorem_id: str, **trace) -> FormulaResult:
    return FormulaResult(Fraction(value), Coverage.COVERED, FormulaTrace(theorem_id, **trace))


def _gap(reason: str, **trace) -> FormulaResult:
    return FormulaResult(None, Coverage.NOT_COVERED, FormulaTrace(f"gap-{reason}", **trace))


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _parity(x: int) -> str:
    return "even" if x % 2 == 0 else "odd"


def _pow2(e: int) -> Fraction:
    return Fraction(2) ** e


def _tail(h: int) -> Fraction:
    # sum_{i=2}^{h} (i-1) / 2^i
    if h < 2:
        return Fraction(0)
    return 1 - (h + 1) / _pow2(h)


def tail_sum(h: int) -> float:
    """``sum_{i=2}^{h} (i-1)/2**i`` in closed form, ``1 - (h+1)/2**h`` (0 for h < 2)."""
    return float(_tail(h))


def residue_t(params: HararyParams, rule: ResidueRule) -> int:
    """The residue ``t`` each family of formulas is keyed on."""
    k, n = params.k, params.n
    case = params.parity_case
    if rule is ResidueRule.EVEN_K and case is ParityCase.EVEN_K:
        return (n - 1) % k
    if rule is ResidueRule.ODD_K_EVEN_N and case is ParityCase.ODD_K_EVEN_N:
        return n % (k - 1)
    if rule is ResidueRule.ODD_K_ODD_N and case is ParityCase.ODD_K_ODD_N:
        return (n - k - 1) % (2 * (k - 1))
    if rule is ResidueRule.K3_ODD and k == 3 and n % 2 == 1:
        return (n - 4) % 4
    raise ParameterError(f"residue rule {rule.value} does not apply to k={k}, n={n}")


# -- diameter ---------------------------------------------------------------


def _even_k_diameter(k: int, n: int) -> int:
    return n // k if n % k == 1 else _ceil_div(n, k)


def diameter_formula(
    params: HararyParams, rule: DiameterRule = DiameterRule.EXACT
) -> FormulaResult:
    k, n = params.k, params.n
    if k == 2:
        return _gap("k2")
    if k % 2 == 0:
        return _covered(_even_k_diameter(k, n), "Diam-evenk")
    if k == 3:
        if n % 2 == 0:
            return _covered(_ceil_div(n, 4), "Diam-k3-evenn")
        return _covered(_ceil_div(n + 1, 4), "Diam-k3-oddn")
    base = _ceil_div(n, 2 * k - 2)
    if n % 2 == 0:
        inner = _even_k_diameter(k - 1, n)
        bump = inner % 2 == 0 and n % (k - 1) != 2
        return _covered(
            base + bump,
            "Diam-oddk-evenn",
            inner_diam=inner,
            inner_diam_parity=_parity(inner),
        )
    m = 2 * (k - 1)
    t = (n - k - 1) % m
    if rule is DiameterRule.PUBLISHED:
        return _covered(base + (t == 1), "Diam-oddk-oddn-published", t=t, t_modulus=m)
    return _covered(base + (t <= k - 4), "Diam-oddk-oddn", t=t, t_modulus=m)


def _diam(params: HararyParams, rule: DiameterRule) -> int:
    return int(diameter_formula(params, rule).exact)


# -- closeness --------------------------------------------------------------


def closeness_formula(
    params: HararyParams, rule: DiameterRule = DiameterRule.EXACT
) -> FormulaResult:
    """Closed-form total closeness ``sum_i C(i)`` of H(k, n)."""
    k, n = params.k, params.n
    if k == 2:
        return _gap("k2")
    d = _diam(params, rule)
    case = params.parity_case

    if case is ParityCase.EVEN_K:
        t = residue_t(params, ResidueRule.EVEN_K)
        if t != 0:
            value = n * (k + (t - 2 * k) / _pow2(d))
            return _covered(value, "Thm2.1-t", t=t, t_modulus=k, diam=d)
        return _covered(n * (k - k / _pow2(d)), "Thm2.1-t0", t=t, t_modulus=k, diam=d)

    if case is ParityCase.ODD_K_EVEN_N:
        if d == 1:
            return _covered(Fraction(n * (n - 1), 2), "Thm2.2-diam1", diam=d)
        if d == 2:
            return _covered(n * (Fraction(k, 2) + Fraction(n - k - 1, 4)), "Thm2.2-diam2", diam=d)
        if k == 3:
            inner = _even_k_diameter(2, n)
            tr = dict(diam=d, inner_diam=inner, inner_diam_parity=_parity(inner))
            if inner % 2 == 1:
                return _covered(Fraction(7 * n, 2) - 6 * n / _pow2(d), "Cor2.6-odd-inner-diam", **tr)
            return _covered(Fraction(7 * n, 2) - 2 * n / _pow2(d - 1), "Cor2.6-even-inner-diam", **tr)
        t = residue_t(params, ResidueRule.ODD_K_EVEN_N)
        inner = _even_k_diameter(k - 1, n)
        par = _parity(inner)
        tr = dict(t=t, t_modulus=k - 1, diam=d, inner_diam=inner, inner_diam_parity=par)
        head = Fraction(n * k, 2)
        ring = n * (k - 1) * (1 - 1 / _pow2(d - 2))
        if t not in (0, 2):
            last = n * (k + t - 3) if par == "odd" else n * (t - 2)
            return _covered(head + ring + last / _pow2(d), f"Thm2.3-{par}-inner-diam", **tr)
        if t == 2:
            if par == "odd":
                value = head + n * (k - 1) * (1 - 3 / _pow2(d))
            else:
                value = head + n * (k - 1) * (1 - 1 / _pow2(d - 1))
            return _covered(value, f"Thm2.4-{par}-inner-diam", **tr)
        last = 2 * n * (k - 2) if par == "odd" else n * (k - 3)
        return _covered(head + ring + last / _pow2(d), f"Thm2.5-{par}-inner-diam", **tr)

    # odd k, odd n: not vertex-transitive
    if d == 1:
        return _covered(Fraction(n * (n - 1), 2), "Thm2.7-diam1", diam=d)
    if d == 2:
        return _covered(Fraction(n * n + n * k - n + 1, 4), "Thm2.7-diam2", diam=d)
    t = residue_t(params, ResidueRule.ODD_K_ODD_N)
    A = (d - 2) * (k - 1)
    B = 1 - 1 / _pow2(d - 2)
    value = (
        Fraction(A + k * n + 1, 2)
        + Fraction(n * t - A - 1) / _pow2(d)
        + (k - 1) * (n * B - Fraction(d - 3, 2) - 1 / _pow2(d - 1))
    )
    return _covered(value, "Thm2.8", t=t, t_modulus=2 * (k - 1), diam=d, A=Fraction(A), B=B)


# -- per-vertex classes for odd k, odd n -----------------------------------


@dataclass(frozen=True)
class VertexClass:
    """``apex`` (vertex (n-1)/2), ``ring`` group ``j`` flanking it, or ``rm`` (the rest)."""

    kind: str
    group: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in ("apex", "ring", "rm"):
            raise ParameterError(f"unknown vertex class {self.kind!r}")
        if (self.kind == "ring") != (self.group is not None):
            raise ParameterError("ring classes need a group index, others must not have one")

    def __str__(self) -> str:
        return f"ring{self.group}" if self.kind == "ring" else self.kind


APEX = VertexClass("apex")
RM = VertexClass("rm")


def ring_group(j: int) -> VertexClass:
    return VertexClass("ring", j)


def _odd_odd_diam(params: HararyParams, rule: DiameterRule) -> int:
    if params.parity_case is not ParityCase.ODD_K_ODD_N:
        raise ParameterError("vertex classes are defined only for odd k and odd n")
    d = _diam(params, rule)
    if d <= 2:
        raise ParameterError(f"vertex classes need diameter > 2, got {d}")
    return d


def classify_vertex(
    params: HararyParams, v: int, rule: DiameterRule = DiameterRule.EXACT
) -> VertexClass:
    d = _odd_odd_diam(params, rule)
    if not 0 <= v < params.n:
        raise ParameterError(f"vertex {v} out of range for n={params.n}")
    offset = abs(v - (params.n - 1) // 2)
    if offset == 0:
        return APEX
    j = (offset - 1) // ((params.k - 1) // 2)
    return ring_group(j) if j <= d - 3 else RM


def class_sizes(params: HararyParams, rule: DiameterRule = DiameterRule.EXACT) -> dict:
    d = _odd_odd_diam(params, rule)
    k, n = params.k, params.n
    sizes = {APEX: 1}
    sizes.update({ring_group(j): k - 1 for j in range(d - 2)})
    sizes[RM] = n - 1 - (k - 1) * (d - 2)
    return sizes


def _class_value(params: HararyParams, cls: VertexClass, rule: DiameterRule) -> Fraction:
    d = _odd_odd_diam(params, rule)
    k = params.k
    t = residue_t(params, ResidueRule.ODD_K_ODD_N)
    ring = (k - 1) * (1 - 1 / _pow2(d - 2))
    if cls.kind == "rm":
        return Fraction(k, 2) + ring + t / _pow2(d)
    apex = Fraction(k + 1, 2) + ring + (t - 1) / _pow2(d)
    if cls.kind == "apex":
        return apex
    if not 0 <= cls.group <= d - 3:
        raise ParameterError(f"ring group {cls.group} outside 0..{d - 3}")
    return apex - sum((1 / _pow2(m) - 1 / _pow2(m + 1) for m in range(1, cls.group + 2)), Fraction(0))


def vertex_closeness_formula_odd_odd(
    params: HararyParams, cls: VertexClass, rule: DiameterRule = DiameterRule.EXACT
) -> float:
    return float(_class_value(params, cls, rule))


def class_reconstruction(params: HararyParams, rule: DiameterRule = DiameterRule.EXACT) -> Fraction:
    """Total closeness rebuilt as ``sum(class size * class value)``."""
    return sum(
        (size * _class_value(params, cls, rule) for cls, size in class_sizes(params, rule).items()),
        Fraction(0),
    )


# -- consecutive circulant --------------------------------------------------


def circulant_closeness_formula(n: int, l: int) -> FormulaResult:
    if n < 2 or not 1 <= l <= n // 2:
        raise ParameterError(f"step bound l must satisfy 1 <= l <= n//2, got n={n}, l={l}")
    t = (n - 1) % (2 * l)
    if t != 0:
        d = _ceil_div(n, 2 * l)
        return _covered(n * (2 * l + (t - 4 * l) / _pow2(d)), "Cor2.10-t", t=t, t_modulus=2 * l, diam=d)
    d = n // (2 * l)
    return _covered(2 * n * l * (1 - 1 / _pow2(d)), "Cor2.10-t0", t=t, t_modulus=2 * l, diam=d)


# -- vertex residual closeness ---------------------------------------------


def residual_formula(
    params: HararyParams, rule: DiameterRule = DiameterRule.EXACT
) -> FormulaResult:
    """Closed-form vertex residual closeness ``min_v C(H - v)``."""
    k, n = params.k, params.n
    if k == 2:
        return _gap("k2")
    d = _diam(params, rule)
    case = params.parity_case
    c = closeness_formula(params, rule).exact
    scaled = Fraction(n - 2, n) * c

    if case is ParityCase.EVEN_K:
        if d > 2 or (d == 2 and n % k == 1):
            if n % k == 1:
                d0 = _tail(d)
                tid = "Thm3.1-n1" if d > 2 else "Rem3.2-thm3.1-diam2"
            else:
                d0 = _tail(d - 1)
                tid = "Thm3.1-not1"
            return _covered(scaled - d0, tid, diam=d, D_v=d0, closeness=c)
        return _covered(scaled, "Rem3.2-vanishing-D0", diam=d, D_v=Fraction(0), closeness=c)

    if case is ParityCase.ODD_K_EVEN_N:
        if d <= 2:
            return _gap("oddk-evenn-diam<=2", diam=d)
        if k == 3:
            if n == 4 * d:
                d0 = Fraction(3, 2) - (2 * d + 1) / _pow2(d)
                return _covered(scaled - d0, "Cor3.4-n-eq-4diam", diam=d, D_v=d0, closeness=c)
            d0 = Fraction(3, 2) * _tail(d - 1)
            return _covered(scaled - d0, "Cor3.4-generic", diam=d, D_v=d0, closeness=c)
        if n == (k - 1) * (2 * d - 1) + 2:
            d0 = _tail(d)
            return _covered(scaled - d0, "Thm3.3-boundary", diam=d, D_v=d0, closeness=c)
        d0 = _tail(d - 1)
        return _covered(scaled - d0, "Thm3.3-generic", diam=d, D_v=d0, closeness=c)

    # odd k, odd n
    if k == 3:
        if n in SMALL_K3_RESIDUALS:
            return _covered(SMALL_K3_RESIDUALS[n], "Rem3.7-table", diam=d)
        if d <= 3:
            return _gap("k3-oddn-diam<=3", diam=d)
        t = residue_t(params, ResidueRule.K3_ODD)
        if t == 3:
            dv = Fraction(15, 4) - Fraction(8 * d - 1) / _pow2(d)
            value = c - Fraction(47, 4) + Fraction(8 * d + 11) / _pow2(d)
            return _covered(value, "Cor3.6-t3", t=t, t_modulus=4, diam=d, D_v=dv, closeness=c)
        dv = Fraction(15, 4) - Fraction(9 * d - 3) / _pow2(d)
        value = c - Fraction(47, 4) + Fraction(9 * d + 13) / _pow2(d)
        return _covered(value, "Cor3.6-t1", t=t, t_modulus=4, diam=d, D_v=dv, closeness=c)
    if d <= 2:
        return _gap("oddk-oddn-diam<=2", diam=d)
    t = residue_t(params, ResidueRule.ODD_K_ODD_N)
    dv = 3 * _tail(d - 1)
    value = c - 3 * k - 2 + Fraction(4 * k - 3 - t + 3 * d) / _pow2(d - 1)
    return _covered(value, "Thm3.5", t=t, t_modulus=2 * (k - 1), diam=d, D_v=dv, closeness=c)


def apex_removal_closeness(params: HararyParams, rule: DiameterRule = DiameterRule.EXACT) -> Fraction:
    """``C - 2 C(apex) - D_v``: closeness after deleting vertex (n-1)/2, from its parts.

    Independent reassembly of the odd-k odd-n residual used to cross-check the
    simplified residual statement.
    """
    res = residual_formula(params, rule)
    if res.trace.theorem_id not in ("Thm3.5", "Cor3.6-t3", "Cor3.6-t1"):
        raise ParameterError("apex decomposition applies only to odd k, odd n with diameter > 2")
    apex = _class_value(params, APEX, rule)
    return res.trace.closeness - 2 * apex - res.trace.D_v
