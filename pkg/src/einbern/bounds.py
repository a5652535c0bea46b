"""Closed-form Bernstein-type bounds for random tensor sums.

Three bounds are provided: one for even-order pairwise-symmetric sums
(largest-eigenvalue statistic), one for sums of any order (spectral-norm
statistic), and an intrinsic-dimension refinement whose prefactor tracks
the effective rank of the variance statistics instead of the ambient
dimension.  Every expectation over a randomness law is evaluated by
exact enumeration of the law's support, never by sampling, so reports
are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import (
    einstein_product,
    gen_product_inner,
    gen_product_outer,
    matricize,
)
from .errors import ApplicabilityError, DomainError, ModelError, NumericalError
from .spectral import e_eigenvalues, gen_spectral_norm, sym_eig
from .tensor import DEFAULT_TOL, Tensor, is_e_symmetric

__all__ = [
    "Rademacher",
    "Subsample",
    "SumModel",
    "GeneralVariance",
    "TailBound",
    "BernsteinReport",
    "uniform_bound_L",
    "einstein_second_moment",
    "variance_even",
    "variance_general",
    "expectation_bound",
    "expectation_bound_general",
    "tail_bound",
    "intrinsic_report",
    "resolve_theorem",
    "build_report",
    "format_report",
    "format_tail_csv",
]

# E-PSD ordering checks accept eigenvalues down to -PSD_TOL times the norm
PSD_TOL = 1e-10


@dataclass(frozen=True)
class Rademacher:
    """Each summand is its component times an independent uniform sign."""


@dataclass(frozen=True)
class Subsample:
    """Summands are uniform draws from the centered population.

    Each of ``sample_size`` independent draws picks one of the n centered
    population tensors and scales it by n / sample_size, matching the
    error of estimating a population total from a uniform subsample.
    Only drawing with replacement keeps the summands independent.
    """

    sample_size: int
    with_replacement: bool = True


@dataclass(frozen=True)
class SumModel:
    """A random sum Y = sum_k X_k of independent zero-mean tensors."""

    components: tuple
    law: Rademacher | Subsample = Rademacher()

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ModelError("a model needs at least one component")
        shape = comps[0].shape
        for c in comps:
            if not isinstance(c, Tensor):
                raise ModelError("components must be Tensor instances")
            if c.shape != shape:
                raise ModelError(
                    f"components disagree in shape: {c.shape} vs {shape}"
                )
        if not comps[0].is_cubic or comps[0].order < 1:
            raise ModelError(f"components must be cubic with order >= 1, got {shape}")
        if isinstance(self.law, Subsample):
            if not self.law.with_replacement:
                raise ModelError(
                    "subsampling without replacement breaks independence; refused"
                )
            if self.law.sample_size < 1:
                raise ModelError("sample_size must be positive")
            total = np.zeros(comps[0].size)
            scale = 0.0
            for c in comps:
                total += c.data
                scale = max(scale, c.max_abs())
            if float(np.abs(total).max()) > DEFAULT_TOL * max(scale, 1.0) * len(comps):
                raise ModelError(
                    "subsample population is not centered; build the model "
                    "with SumModel.subsample to center it"
                )
        elif not isinstance(self.law, Rademacher):
            raise ModelError(f"unsupported randomness law: {self.law!r}")

    @classmethod
    def rademacher(cls, components) -> "SumModel":
        return cls(tuple(components), Rademacher())

    @classmethod
    def subsample(
        cls, population, sample_size: int, with_replacement: bool = True
    ) -> "SumModel":
        """Center a population and wrap it in a subsampling model."""
        pop = tuple(population)
        if not pop:
            raise ModelError("population must be non-empty")
        mean = np.zeros(pop[0].size)
        for c in pop:
            if c.shape != pop[0].shape:
                raise ModelError("population tensors disagree in shape")
            mean += c.data
        mean /= len(pop)
        centered = tuple(Tensor(c.shape, c.data - mean, copy=False) for c in pop)
        return cls(centered, Subsample(sample_size, with_replacement))

    @property
    def order(self) -> int:
        return self.components[0].order

    @property
    def dim(self) -> int:
        return self.components[0].cubic_dim

    @property
    def split(self) -> int:
        """Leading mode count m = ceil(N/2) of the generalized products."""
        return (self.order + 1) // 2

    @property
    def num_summands(self) -> int:
        if isinstance(self.law, Subsample):
            return self.law.sample_size
        return len(self.components)

    def is_even_symmetric(self, tol: float = DEFAULT_TOL) -> bool:
        """True when the even-order, pairwise-symmetric bound applies."""
        return self.order % 2 == 0 and all(
            is_e_symmetric(c, tol) for c in self.components
        )


def _draw_scale(model: SumModel) -> float:
    """Scale factor applied to each realized component."""
    if isinstance(model.law, Subsample):
        return len(model.components) / model.law.sample_size
    return 1.0


def uniform_bound_L(model: SumModel, kind: str | None = None) -> float:
    """Smallest uniform cap on the per-summand statistic.

    ``kind`` "even" caps the largest eigenvalue of each realizable
    summand; "general" caps its spectral norm.  Both enumerate the finite
    realization set exactly: two signs per component under Rademacher,
    one scaled tensor per population member under subsampling.
    """
    if kind is None:
        kind = "even" if model.is_even_symmetric() else "general"
    if kind not in ("even", "general"):
        raise DomainError(f"unknown bound kind {kind!r}")
    scale = _draw_scale(model)
    best = 0.0
    if kind == "even":
        if not model.is_even_symmetric():
            raise ApplicabilityError(
                "eigenvalue cap needs an even order and pairwise-symmetric "
                "components"
            )
        for c in model.components:
            values = e_eigenvalues(c)
            if isinstance(model.law, Rademacher):
                # both signs occur, so the cap is the eigenvalue magnitude
                best = max(best, values[0], -values[-1])
            else:
                best = max(best, scale * values[0])
    else:
        for c in model.components:
            best = max(best, scale * gen_spectral_norm(c))
    return float(best)


def _symmetrized(t: Tensor) -> Tensor:
    half = matricize(t)
    return Tensor(t.shape, ((half + half.T) / 2.0).reshape(-1, order="F"), copy=False)


def einstein_second_moment(model: SumModel) -> Tensor:
    """Exact sum over summands of E(X_k * X_k) under the Einstein square."""
    if model.order % 2:
        raise ApplicabilityError("the Einstein square needs an even order")
    for c in model.components:
        if not is_e_symmetric(c):
            raise ApplicabilityError("components must be pairwise symmetric")
    acc = None
    for c in model.components:
        sq = einstein_product(c, c)
        acc = sq if acc is None else acc + sq
    if isinstance(model.law, Subsample):
        # per draw: mean over the n population squares times (n/s)^2,
        # summed over the s draws
        acc = acc * (len(model.components) / model.law.sample_size)
    return _symmetrized(acc)


def variance_even(model: SumModel) -> float:
    """Variance statistic of the even-order bound: the norm of the
    summed Einstein squares."""
    moment = einstein_second_moment(model)
    values = e_eigenvalues(moment)
    return float(max(values[0], -values[-1]))


@dataclass(frozen=True)
class GeneralVariance:
    """Variance statistics of the general bound.

    ``outer``/``inner`` are the exact sums of expected trailing-mode and
    leading-mode self-products; ``nu`` is the larger of their norms.
    """

    nu: float
    outer: Tensor
    inner: Tensor


def variance_general(model: SumModel) -> GeneralVariance:
    """Exact variance statistics for tensors of any order.

    Independence and zero means make cross terms vanish, so summing the
    per-component second moments is exact, with the subsampling scale
    applied in closed form.
    """
    acc_outer = None
    acc_inner = None
    for c in model.components:
        o = gen_product_outer(c, c)
        i = gen_product_inner(c, c)
        acc_outer = o if acc_outer is None else acc_outer + o
        acc_inner = i if acc_inner is None else acc_inner + i
    if isinstance(model.law, Subsample):
        factor = len(model.components) / model.law.sample_size
        acc_outer = acc_outer * factor
        acc_inner = acc_inner * factor
    vals_outer = e_eigenvalues(acc_outer)
    vals_inner = e_eigenvalues(acc_inner)
    nu = max(
        vals_outer[0],
        -vals_outer[-1],
        vals_inner[0],
        -vals_inner[-1],
    )
    return GeneralVariance(nu=float(nu), outer=acc_outer, inner=acc_inner)


def expectation_bound(nu: float, L: float, m: int, d: int) -> float:
    """Mean bound for the even-order statistic:
    sqrt(2 nu m log d) + L m log d / 3."""
    if nu < 0 or L < 0:
        raise DomainError("nu and L must be nonnegative")
    if m < 1:
        raise DomainError("m must be at least 1")
    if d < 2:
        raise DomainError("the even-order mean bound needs d >= 2")
    mlogd = m * math.log(d)
    return math.sqrt(2.0 * nu * mlogd) + L * mlogd / 3.0


def expectation_bound_general(
    nu: float, L: float, order: int, d: int, m: int | None = None
) -> float:
    """Mean bound for the norm statistic, with log(d**m + d**(N-m))
    replacing m log d."""
    if nu < 0 or L < 0:
        raise DomainError("nu and L must be nonnegative")
    if order < 1 or d < 1:
        raise DomainError("order and d must be at least 1")
    if m is None:
        m = (order + 1) // 2
    logdim = math.log(d**m + d ** (order - m))
    return math.sqrt(2.0 * nu * logdim) + L * logdim / 3.0


class TailBound(NamedTuple):
    raw: float
    clamped: float


def tail_bound(t: float, nu: float, L: float, dim_factor: float) -> TailBound:
    """Tail probability bound dim_factor * exp(-t^2/2 / (nu + L t / 3)).

    The raw value can exceed 1; the clamped value is capped there for
    reporting.  A deterministic zero sum (nu = L = 0) has zero tail for
    every positive t.
    """
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if nu < 0 or L < 0:
        raise DomainError("nu and L must be nonnegative")
    if t == 0.0:
        raw = float(dim_factor)
    elif nu == 0.0 and L == 0.0:
        raw = 0.0
    else:
        raw = float(dim_factor) * math.exp(-(t * t) / 2.0 / (nu + L * t / 3.0))
    return TailBound(raw=raw, clamped=min(1.0, raw))


@dataclass(frozen=True)
class BernsteinReport:
    """Bound values for one theorem applied to one model.

    ``dim_factor`` is the ambient dimensional factor (d**m for the
    even-order bound, d**m + d**(N-m) otherwise); ``tail_factor`` is the
    multiplier actually used in the tail curve, which for the intrinsic
    bound is 4 times the intrinsic dimension ``dv``.
    """

    theorem: str
    order: int
    dim: int
    split: int
    L: float
    nu: float
    dim_factor: float
    tail_factor: float
    dv: float | None = None
    expectation_bound: float | None = None
    tail_domain_min: float = 0.0

    def __post_init__(self):
        if self.nu < 0 or self.L < 0:
            raise DomainError("nu and L must be nonnegative")
        if self.dv is not None and self.dv > self.dim_factor * (1 + 1e-9):
            raise NumericalError(
                f"intrinsic dimension {self.dv} exceeds the ambient factor "
                f"{self.dim_factor}"
            )

    def tail(self, t: float) -> TailBound:
        if t < self.tail_domain_min - 1e-12:
            raise DomainError(
                f"t={t} is below the bound's validity threshold "
                f"{self.tail_domain_min}"
            )
        return tail_bound(t, self.nu, self.L, self.tail_factor)


def _trace_of(t: Tensor) -> float:
    return float(np.trace(matricize(t)))


def _check_e_psd(t: Tensor, label: str) -> np.ndarray:
    values = e_eigenvalues(t)
    norm = max(values[0], -values[-1])
    if values[-1] < -PSD_TOL * max(norm, 1.0):
        raise DomainError(f"{label} must be E-PSD (min eigenvalue {values[-1]:.3e})")
    return values


def _check_dominates(bound: Tensor, exact: Tensor, label: str) -> None:
    diff = bound - exact
    values = e_eigenvalues(diff)
    norm_bound = float(np.abs(e_eigenvalues(bound)).max())
    if values[-1] < -PSD_TOL * max(norm_bound, 1.0):
        raise DomainError(
            f"{label} does not dominate the exact variance statistic "
            f"(min eigenvalue of difference {values[-1]:.3e})"
        )


def intrinsic_report(
    v_outer: Tensor,
    v_inner: Tensor,
    L: float,
    exact_outer: Tensor | None = None,
    exact_inner: Tensor | None = None,
) -> BernsteinReport:
    """Intrinsic-dimension tail bound from variance upper bounds.

    ``v_outer`` and ``v_inner`` must be E-PSD and, when the exact
    statistics are supplied, dominate them in the E-PSD order.  The tail
    4 dv exp(-t^2/2/(nu + Lt/3)) is valid for t >= sqrt(nu) + L/3.

    The intrinsic dimension from the tensor traces is cross-checked
    against trace/norm of the block matrix assembled from the two
    unfoldings.
    """
    if L < 0:
        raise DomainError("L must be nonnegative")
    vals_outer = _check_e_psd(v_outer, "outer variance bound")
    vals_inner = _check_e_psd(v_inner, "inner variance bound")
    if exact_outer is not None:
        _check_dominates(v_outer, exact_outer, "outer variance bound")
    if exact_inner is not None:
        _check_dominates(v_inner, exact_inner, "inner variance bound")

    m = v_outer.order // 2
    rest = v_inner.order // 2
    order = m + rest
    d = v_outer.cubic_dim if v_outer.order else v_inner.cubic_dim
    nu = float(max(vals_outer[0], vals_inner[0]))
    if nu <= 0.0:
        raise ApplicabilityError(
            "zero variance leaves the intrinsic dimension undefined"
        )
    dv = (_trace_of(v_outer) + _trace_of(v_inner)) / nu

    # block matrix [[f(v_outer)^T, 0], [0, f(v_inner)]]
    fo = matricize(v_outer).T
    fi = matricize(v_inner)
    block = np.zeros((fo.shape[0] + fi.shape[0],) * 2)
    block[: fo.shape[0], : fo.shape[1]] = fo
    block[fo.shape[0] :, fo.shape[1] :] = fi
    block_values = sym_eig(block).values
    dv_matrix = float(np.trace(block)) / float(block_values[0])
    if abs(dv - dv_matrix) > 1e-12 * max(1.0, abs(dv)):
        raise NumericalError(
            f"intrinsic dimension mismatch: {dv} from traces, "
            f"{dv_matrix} from the block matrix"
        )

    dim_factor = float(d**m + d ** (order - m))
    return BernsteinReport(
        theorem="intrinsic",
        order=order,
        dim=d,
        split=m,
        L=float(L),
        nu=nu,
        dim_factor=dim_factor,
        tail_factor=4.0 * dv,
        dv=dv,
        expectation_bound=None,
        tail_domain_min=math.sqrt(nu) + L / 3.0,
    )


def resolve_theorem(model: SumModel, requested: str = "auto") -> str:
    """Pick the bound to apply, validating applicability."""
    if requested not in ("auto", "even", "general", "intrinsic"):
        raise DomainError(f"unknown theorem {requested!r}")
    if requested == "auto":
        return "even" if model.is_even_symmetric() else "general"
    if requested == "even" and not model.is_even_symmetric():
        raise ApplicabilityError(
            "the even-order bound needs an even order and pairwise-symmetric "
            "components"
        )
    return requested


def build_report(model: SumModel, theorem: str = "auto") -> BernsteinReport:
    """Compute every bound quantity of the chosen theorem for a model."""
    theorem = resolve_theorem(model, theorem)
    n_order = model.order
    d = model.dim
    m = model.split

    if theorem == "even":
        if d < 2:
            raise ApplicabilityError("the even-order mean bound needs d >= 2")
        L = uniform_bound_L(model, "even")
        nu = variance_even(model)
        dim_factor = float(d**m)
        return BernsteinReport(
            theorem="even",
            order=n_order,
            dim=d,
            split=m,
            L=L,
            nu=nu,
            dim_factor=dim_factor,
            tail_factor=dim_factor,
            expectation_bound=expectation_bound(nu, L, m, d),
        )

    L = uniform_bound_L(model, "general")
    gv = variance_general(model)
    if theorem == "general":
        dim_factor = float(d**m + d ** (n_order - m))
        return BernsteinReport(
            theorem="general",
            order=n_order,
            dim=d,
            split=m,
            L=L,
            nu=gv.nu,
            dim_factor=dim_factor,
            tail_factor=dim_factor,
            expectation_bound=expectation_bound_general(gv.nu, L, n_order, d, m),
        )
    return intrinsic_report(gv.outer, gv.inner, L)


def _g(value: float) -> str:
    return format(float(value), ".17g")


def format_report(report: BernsteinReport) -> str:
    """Flat key=value serialization, one entry per line."""
    pairs = [
        ("theorem", report.theorem),
        ("order", str(report.order)),
        ("dim", str(report.dim)),
        ("split", str(report.split)),
        ("L", _g(report.L)),
        ("nu", _g(report.nu)),
        ("dim_factor", _g(report.dim_factor)),
        ("tail_factor", _g(report.tail_factor)),
    ]
    if report.dv is not None:
        pairs.append(("intrinsic_dim", _g(report.dv)))
    if report.expectation_bound is not None:
        pairs.append(("expectation_bound", _g(report.expectation_bound)))
    pairs.append(("tail_domain_min", _g(report.tail_domain_min)))
    return "".join(f"{k}={v}\n" for k, v in pairs)


def format_tail_csv(report: BernsteinReport, ts) -> str:
    """CSV tail curve with both the raw and the clamped bound."""
    lines = ["t,bound_raw,bound_clamped"]
    for t in ts:
        raw, clamped = report.tail(float(t))
        lines.append(f"{_g(t)},{_g(raw)},{_g(clamped)}")
    return "\n".join(lines) + "\n"
