"""Seeded property suites behind the `verify` command.

Each property draws its own generator from the suite seed, computes a
worst-case error over the requested number of cases, and reports it
against the tolerance it must meet.  The contraction identities always
pit the fast reshape-multiply path against naive nested-loop references
so that the two routes stay independent witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from . import algebra, bounds, spectral, tensor

__all__ = ["PropertyResult", "SUITES", "run_suite", "suite_names"]


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, err: float, tol: float, extra: str = "") -> PropertyResult:
    note = f"max err {err:.3e} (tol {tol:.1e})"
    if extra:
        note += f", {extra}"
    return PropertyResult(name, err <= tol, note)


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, salt])


# ---------------------------------------------------------------------------
# algebra suite


def _prop_linearize_bijective(seed, cases):
    shapes = [(d,) * n for n in range(1, 7) for d in range(1, 5)]
    rng = _rng(seed, 1)
    for _ in range(min(cases, 40)):
        n = int(rng.integers(1, 5))
        shapes.append(tuple(int(rng.integers(1, 5)) for _ in range(n)))
    checked = 0
    for shape in shapes:
        size = math.prod(shape)
        seen = np.zeros(size, dtype=bool)
        for idx0 in np.ndindex(*shape):
            flat = tensor.linearize(tuple(i + 1 for i in idx0), shape)
            if seen[flat - 1] or tensor.delinearize(flat, shape) != tuple(
                i + 1 for i in idx0
            ):
                return PropertyResult(
                    "linearize-bijective", False, f"collision in shape {shape}"
                )
            seen[flat - 1] = True
        if not seen.all():
            return PropertyResult(
                "linearize-bijective", False, f"range gap in shape {shape}"
            )
        checked += 1
    return PropertyResult(
        "linearize-bijective", True, f"{checked} shapes fully enumerated"
    )


def _prop_transpose_involution(seed, cases):
    rng = _rng(seed, 2)
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_tensor(rng, (d,) * (2 * m))
        if tensor.transpose_even(tensor.transpose_even(a)) != a:
            return PropertyResult(
                "transpose-involution", False, "double transpose changed bits"
            )
        if not np.array_equal(
            algebra.matricize(tensor.transpose_even(a)), algebra.matricize(a).T
        ):
            return PropertyResult(
                "transpose-involution", False, "unfolding transpose mismatch"
            )
    return PropertyResult("transpose-involution", True, f"{cases} cases, bit-exact")


def _prop_outer_kron(seed, cases):
    rng = _rng(seed, 3)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 4))
        d = int(rng.integers(2, 5))
        x = rng.uniform(-1, 1, size=d)
        diff = np.abs(
            tensor.outer_power(x, m).data - tensor.kron_power(x, m)
        ).max()
        worst = max(worst, float(diff))
    return _result("outer-vs-kron-power", worst, 1e-13)


def _prop_apply_power_quadratic(seed, cases):
    rng = _rng(seed, 4)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_e_symmetric(rng, m, d)
        x = rng.uniform(-1, 1, size=d)
        direct = tensor.apply_power(a, x)
        vec = tensor.kron_power(x, m)
        oracle = float(vec @ algebra.matricize(a) @ vec)
        scale = max(1.0, abs(oracle))
        worst = max(worst, abs(direct - oracle) / scale)
    return _result("form-vs-unfolding-quadratic", worst, 1e-12)


def _prop_homomorphism(seed, cases):
    rng = _rng(seed, 5)
    worst = 0.0
    for m, d in iproduct((1, 2), (2, 3)):
        for _ in range(cases):
            a = tensor.random_tensor(rng, (d,) * (2 * m))
            b = tensor.random_tensor(rng, (d,) * (2 * m))
            prod = algebra.einstein_product_reference(a, b)
            lhs = algebra.matricize(prod)
            rhs = algebra.matricize(a) @ algebra.matricize(b)
            tol_scale = max(1.0, a.max_abs() * b.max_abs() * d**m)
            worst = max(worst, float(np.abs(lhs - rhs).max()) / tol_scale)
    return _result("unfolding-homomorphism", worst, 1e-12)


def _prop_product_transpose(seed, cases):
    rng = _rng(seed, 6)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_tensor(rng, (d,) * (2 * m))
        b = tensor.random_tensor(rng, (d,) * (2 * m))
        lhs = tensor.transpose_even(algebra.einstein_product(a, b))
        rhs = algebra.einstein_product(
            tensor.transpose_even(b), tensor.transpose_even(a)
        )
        scale = max(1.0, lhs.max_abs())
        worst = max(worst, float(np.abs(lhs.data - rhs.data).max()) / scale)
    return _result("product-transpose-reversal", worst, 1e-12)


def _prop_identity_neutral(seed, cases):
    rng = _rng(seed, 7)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_tensor(rng, (d,) * (2 * m))
        out = algebra.einstein_product(tensor.identity_tensor(m, d), a)
        worst = max(worst, float(np.abs(out.data - a.data).max()))
    return _result("identity-neutral", worst, 1e-14)


def _prop_gen_product_identities(seed, cases):
    rng = _rng(seed, 8)
    worst = 0.0
    per_combo = max(1, cases // 10)
    for n, d in iproduct((1, 2, 3, 4, 5), (2, 3)):
        for _ in range(per_combo):
            a = tensor.random_tensor(rng, (d,) * n)
            fbar = algebra.matricize_general(a)
            outer = algebra.gen_product_outer_reference(a, a)
            inner = algebra.gen_product_inner_reference(a, a)
            scale = max(1.0, a.max_abs() ** 2 * d**n)
            err_outer = np.abs(algebra.matricize(outer) - fbar @ fbar.T).max()
            err_inner = np.abs(algebra.matricize(inner) - fbar.T @ fbar).max()
            worst = max(worst, float(err_outer) / scale, float(err_inner) / scale)
    return _result("gen-product-unfolding-identities", worst, 1e-12)


def _prop_gen_product_even_reduction(seed, cases):
    rng = _rng(seed, 9)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_tensor(rng, (d,) * (2 * m))
        b = tensor.random_tensor(rng, (d,) * (2 * m))
        lhs1 = algebra.gen_product_outer(a, b)
        rhs1 = algebra.einstein_product(a, tensor.transpose_even(b))
        lhs2 = algebra.gen_product_inner(a, b)
        rhs2 = algebra.einstein_product(tensor.transpose_even(a), b)
        scale = max(1.0, a.max_abs() * b.max_abs() * d**m)
        worst = max(
            worst,
            float(np.abs(lhs1.data - rhs1.data).max()) / scale,
            float(np.abs(lhs2.data - rhs2.data).max()) / scale,
        )
    return _result("gen-product-even-reduction", worst, 1e-12)


def _prop_gram_symmetry(seed, cases):
    rng = _rng(seed, 10)
    for _ in range(cases):
        n = int(rng.integers(1, 6))
        d = int(rng.integers(2, 4))
        a = tensor.random_tensor(rng, (d,) * n)
        if not tensor.is_e_symmetric(algebra.gen_product_outer(a, a), 0.0):
            return PropertyResult(
                "self-product-exactly-symmetric", False, "asymmetric Gram tensor"
            )
    return PropertyResult(
        "self-product-exactly-symmetric", True, f"{cases} cases, tolerance zero"
    )


def _prop_matricize_roundtrip(seed, cases):
    rng = _rng(seed, 11)
    for _ in range(min(cases, 50)):
        n = int(rng.integers(1, 6))
        d = int(rng.integers(2, 4))
        a = tensor.random_tensor(rng, (d,) * n)
        back = algebra.unmatricize(algebra.matricize_general(a), n, d)
        if back != a:
            return PropertyResult("matricize-roundtrip", False, "bits changed")
    return PropertyResult("matricize-roundtrip", True, "round-trips bit-exact")


def _prop_trace_frobenius(seed, cases):
    rng = _rng(seed, 12)
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(1, 5))
        d = int(rng.integers(2, 4))
        a = tensor.random_tensor(rng, (d,) * n)
        frob = float(a.data @ a.data)
        tr_outer = float(np.trace(algebra.matricize(algebra.gen_product_outer(a, a))))
        tr_inner = float(np.trace(algebra.matricize(algebra.gen_product_inner(a, a))))
        scale = max(1.0, frob)
        worst = max(worst, abs(tr_outer - frob) / scale, abs(tr_inner - frob) / scale)
    return _result("gram-trace-is-frobenius", worst, 1e-12)


# ---------------------------------------------------------------------------
# spectral suite


def _prop_sym_eig_contract(seed, cases):
    rng = _rng(seed, 20)
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(2, 13))
        m = rng.standard_normal((n, n))
        m = (m + m.T) / 2
        dec = spectral.sym_eig(m)
        scale = max(1.0, float(np.abs(m).max())) * n
        recon = np.abs(dec.vectors @ np.diag(dec.values) @ dec.vectors.T - m).max()
        ortho = np.abs(dec.vectors.T @ dec.vectors - np.eye(n)).max()
        worst = max(worst, float(recon) / scale, float(ortho))
    return _result("eigensolver-contract", worst, 1e-12)


def _prop_evd_reconstruction(seed, cases):
    rng = _rng(seed, 21)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_e_symmetric(rng, m, d)
        dec = spectral.e_evd(a)
        recon = algebra.einstein_product(
            algebra.einstein_product(dec.u, dec.diag), tensor.transpose_even(dec.u)
        )
        err = float(np.abs(recon.data - a.data).max())
        worst = max(worst, err / (a.max_abs() * d**m))
    return _result("evd-reconstruction", worst, 1e-10)


def _prop_trace_spectrum(seed, cases):
    rng = _rng(seed, 22)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_e_symmetric(rng, m, d)
        diff = abs(spectral.e_trace(a) - float(spectral.e_eigenvalues(a).sum()))
        worst = max(worst, diff / max(1.0, a.max_abs() * d**m))
    return _result("trace-vs-spectrum-sum", worst, 1e-10)


def _prop_evd_hadamard_square(seed, cases):
    rng = _rng(seed, 23)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_e_symmetric(rng, m, d)
        dec = spectral.e_evd(a)
        square = algebra.einstein_product(a, a)
        recon = algebra.einstein_product(
            algebra.einstein_product(dec.u, tensor.hadamard(dec.diag, dec.diag)),
            tensor.transpose_even(dec.u),
        )
        err = float(np.abs(square.data - recon.data).max())
        worst = max(worst, err / max(1.0, square.max_abs() * d**m))
    return _result("square-via-evd-hadamard", worst, 1e-10)


def _prop_dilation_norm(seed, cases):
    rng = _rng(seed, 24)
    worst = 0.0
    for _ in range(cases):
        r = int(rng.integers(1, 6))
        c = int(rng.integers(1, 6))
        b = rng.standard_normal((r, c))
        top = float(spectral.sym_eig(algebra.hermitian_dilation(b)).values[0])
        gram = float(spectral.sym_eig(b.T @ b).values[0])
        sigma = math.sqrt(max(gram, 0.0))
        worst = max(worst, abs(top - sigma) / max(1.0, sigma))
    return _result("dilation-top-eigenvalue-is-norm", worst, 1e-10)


def _prop_norm_chain(seed, cases):
    rng = _rng(seed, 25)
    worst = 0.0
    per_combo = max(1, cases // 6)
    for n, d in iproduct((1, 3, 4), (2, 3)):
        for _ in range(per_combo):
            a = tensor.random_tensor(rng, (d,) * n)
            e1 = math.sqrt(
                spectral.e_spectral_norm(algebra.gen_product_outer(a, a))
            )
            e2 = math.sqrt(
                spectral.e_spectral_norm(algebra.gen_product_inner(a, a))
            )
            fbar = algebra.matricize_general(a)
            e3 = math.sqrt(float(spectral.sym_eig(fbar.T @ fbar).values[0]))
            e4 = spectral.gen_spectral_norm(a)
            scale = max(1.0, e4)
            worst = max(
                worst,
                abs(e1 - e4) / scale,
                abs(e2 - e4) / scale,
                abs(e3 - e4) / scale,
            )
    return _result("spectral-norm-chain", worst, 1e-10)


def _prop_gen_norm_even_symmetric(seed, cases):
    rng = _rng(seed, 26)
    worst = 0.0
    for _ in range(cases):
        m = int(rng.integers(1, 3))
        d = int(rng.integers(2, 4))
        a = tensor.random_e_symmetric(rng, m, d)
        diff = abs(spectral.gen_spectral_norm(a) - spectral.e_spectral_norm(a))
        worst = max(worst, diff / max(1.0, spectral.e_spectral_norm(a)))
    return _result("gen-norm-matches-even-norm", worst, 1e-10)


def _prop_z_lower_bound(seed, cases):
    rng = _rng(seed, 27)
    worst = -math.inf
    count = min(cases, 50)
    for k in range(count):
        a = tensor.random_fully_symmetric(rng, 4, 3)
        est = spectral.z_eigen_max(a, restarts=6, iters=1000, seed=seed + k)
        lam_e = float(spectral.e_eigenvalues(a)[0])
        worst = max(worst, est.value - lam_e)
    return _result("z-estimate-below-e-max", max(worst, 0.0), 1e-8,
                   extra=f"{count} tensors")


def _prop_epsd_sampled_psd(seed, cases):
    rng = _rng(seed, 28)
    worst = 0.0
    for _ in range(min(cases, 10)):
        n = int(rng.integers(2, 5))
        d = int(rng.integers(2, 4))
        a = tensor.random_tensor(rng, (d,) * n)
        gram = algebra.gen_product_outer(a, a)
        if not spectral.is_e_psd(gram, 1e-10 * max(1.0, gram.max_abs())):
            return PropertyResult(
                "epsd-implies-sampled-psd", False, "self-product not E-PSD"
            )
        dd = gram.cubic_dim
        for _ in range(1000):
            x = rng.standard_normal(dd)
            x /= np.linalg.norm(x)
            worst = max(worst, -tensor.apply_power(gram, x))
    return _result("epsd-implies-sampled-psd", worst, 1e-10)


def _prop_counterexample(seed, cases):
    a = tensor.psd_counterexample_tensor()
    values = spectral.e_eigenvalues(a)
    expected = np.array([2.0, 1.0, 0, 0, 0, 0, 0, 0, -1.0])
    err = float(np.abs(values - expected).max())
    if err > 1e-10:
        return PropertyResult("psd-counterexample", False, f"spectrum off by {err:.1e}")
    if spectral.is_e_psd(a):
        return PropertyResult("psd-counterexample", False, "should not be E-PSD")
    rng = _rng(seed, 29)
    worst = 0.0
    for _ in range(1000):
        x = rng.standard_normal(3)
        q = tensor.apply_power(a, x)
        worst = max(worst, abs(q - 6 * x[0] ** 2 * x[1] ** 2))
        if q < -1e-12:
            return PropertyResult("psd-counterexample", False, "negative form value")
    est = spectral.z_eigen_max(a, restarts=20, iters=500, seed=seed)
    if abs(est.value - 1.5) > 1e-6:
        return PropertyResult(
            "psd-counterexample", False, f"z estimate {est.value} is not 1.5"
        )
    return PropertyResult(
        "psd-counterexample",
        True,
        f"spectrum, form and z-estimate reproduced (form err {worst:.1e})",
    )


# ---------------------------------------------------------------------------
# bounds suite


def _prop_formula_spot_values(seed, cases):
    checks = [
        (bounds.expectation_bound(1, 0, 1, 2), math.sqrt(2 * math.log(2))),
        (
            bounds.expectation_bound(1, 1, 2, 2),
            math.sqrt(4 * math.log(2)) + 2 * math.log(2) / 3,
        ),
        (
            bounds.expectation_bound_general(1, 1, 3, 2),
            math.sqrt(2 * math.log(6)) + math.log(6) / 3,
        ),
        (bounds.tail_bound(2, 1, 0, 2).raw, 2 * math.exp(-2)),
        (bounds.tail_bound(0, 1, 1, 4).raw, 4.0),
        (bounds.tail_bound(1, 0, 0, 4).raw, 0.0),
    ]
    worst = max(abs(got - want) for got, want in checks)
    return _result("closed-form-spot-values", worst, 1e-15)


def _prop_tail_monotonicity(seed, cases):
    ts = np.linspace(0.0, 5.0, 26)
    for nu, L in [(0.5, 0.0), (1.0, 1.0), (2.0, 0.3)]:
        raws = [bounds.tail_bound(float(t), nu, L, 4.0).raw for t in ts]
        if any(b >= a for a, b in zip(raws, raws[1:])):
            return PropertyResult("tail-monotonicity", False, "not decreasing in t")
    for t in (0.5, 1.0, 2.0):
        by_nu = [bounds.tail_bound(t, nu, 0.5, 4.0).raw for nu in (0.1, 0.5, 1.0, 2.0)]
        by_l = [bounds.tail_bound(t, 0.5, L, 4.0).raw for L in (0.0, 0.5, 1.0, 2.0)]
        if any(b <= a for a, b in zip(by_nu, by_nu[1:])) or any(
            b <= a for a, b in zip(by_l, by_l[1:])
        ):
            return PropertyResult(
                "tail-monotonicity", False, "not increasing in nu or L"
            )
    return PropertyResult("tail-monotonicity", True, "grids ordered as required")


def _prop_matrix_reduction(seed, cases):
    rng = _rng(seed, 40)
    worst = 0.0
    for _ in range(min(cases, 25)):
        d = int(rng.integers(2, 5))
        comps = [tensor.random_tensor(rng, (d, d)) for _ in range(5)]
        model = bounds.SumModel.rademacher(comps)
        report = bounds.build_report(model, "general")
        mats = [algebra.matricize_general(c) for c in comps]
        l_mat = max(np.linalg.svd(m, compute_uv=False)[0] for m in mats)
        m1 = sum(m @ m.T for m in mats)
        m2 = sum(m.T @ m for m in mats)
        nu_mat = max(
            float(np.linalg.eigvalsh(m1)[-1]), float(np.linalg.eigvalsh(m2)[-1])
        )
        worst = max(
            worst,
            abs(report.L - l_mat) / max(1.0, l_mat),
            abs(report.nu - nu_mat) / max(1.0, nu_mat),
            abs(report.dim_factor - 2 * d),
        )
        sym_comps = [
            (c + tensor.transpose_even(c)) / 2.0 for c in comps
        ]
        sym_model = bounds.SumModel.rademacher(sym_comps)
        even = bounds.build_report(sym_model, "even")
        sym_mats = [algebra.matricize_general(c) for c in sym_comps]
        l_sym = max(float(np.abs(np.linalg.eigvalsh(m)).max()) for m in sym_mats)
        nu_sym = float(
            np.abs(np.linalg.eigvalsh(sum(m @ m for m in sym_mats))).max()
        )
        worst = max(
            worst,
            abs(even.L - l_sym) / max(1.0, l_sym),
            abs(even.nu - nu_sym) / max(1.0, nu_sym),
            abs(even.dim_factor - d),
        )
    return _result("matrix-case-reduction", worst, 1e-12)


def _prop_variance_matricized(seed, cases):
    rng = _rng(seed, 41)
    worst = 0.0
    for _ in range(min(cases, 25)):
        n = int(rng.integers(1, 5))
        d = int(rng.integers(2, 4))
        comps = [tensor.random_tensor(rng, (d,) * n) for _ in range(5)]
        model = bounds.SumModel.rademacher(comps)
        gv = bounds.variance_general(model)
        mats = [algebra.matricize_general(c) for c in comps]
        m1 = sum(m @ m.T for m in mats)
        m2 = sum(m.T @ m for m in mats)
        nu_mat = max(
            float(np.abs(np.linalg.eigvalsh(m1)).max()),
            float(np.abs(np.linalg.eigvalsh(m2)).max()),
        )
        worst = max(worst, abs(gv.nu - nu_mat) / max(1.0, nu_mat))
    return _result("variance-vs-matricized", worst, 1e-12)


def _prop_intrinsic_identity(seed, cases):
    rng = _rng(seed, 42)
    worst = 0.0
    for _ in range(min(cases, 100)):
        n = int(rng.integers(1, 4))
        d = int(rng.integers(2, 4))
        comps = [tensor.random_tensor(rng, (d,) * n) for _ in range(3)]
        model = bounds.SumModel.rademacher(comps)
        gv = bounds.variance_general(model)
        report = bounds.intrinsic_report(gv.outer, gv.inner, 1.0)
        m = model.split
        fo = algebra.matricize(gv.outer).T
        fi = algebra.matricize(gv.inner)
        block = np.zeros((fo.shape[0] + fi.shape[0],) * 2)
        block[: fo.shape[0], : fo.shape[1]] = fo
        block[fo.shape[0] :, fo.shape[1] :] = fi
        dv_np = float(np.trace(block) / np.abs(np.linalg.eigvalsh(block)).max())
        ambient = d**m + d ** (n - m)
        if report.dv > ambient + 1e-9:
            return PropertyResult(
                "intrinsic-dimension-identity", False, "exceeds ambient factor"
            )
        worst = max(worst, abs(report.dv - dv_np) / max(1.0, dv_np))
    return _result("intrinsic-dimension-identity", worst, 1e-12)


def _prop_intrinsic_vs_general(seed, cases):
    rng = _rng(seed, 43)
    comps = [tensor.random_tensor(rng, (2, 2, 2)) for _ in range(5)]
    model = bounds.SumModel.rademacher(comps)
    gen = bounds.build_report(model, "general")
    intr = bounds.build_report(model, "intrinsic")
    worst = 0.0
    for t in np.linspace(intr.tail_domain_min, intr.tail_domain_min + 4.0, 9):
        raw_gen = gen.tail(float(t)).raw
        raw_intr = intr.tail(float(t)).raw
        lhs = raw_intr * gen.dim_factor
        rhs = raw_gen * intr.tail_factor
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return _result("intrinsic-vs-general-ratio", worst, 1e-12)


def _prop_centering_annihilation(seed, cases):
    rng = _rng(seed, 44)
    base = tensor.random_e_symmetric(rng, 1, 3)
    model = bounds.SumModel.subsample([base, base, base], sample_size=4)
    L = bounds.uniform_bound_L(model)
    nu = bounds.variance_even(model)
    worst = max(abs(L), abs(nu))
    return _result("identical-population-centers-to-zero", worst, 1e-12)


def _prop_projector_variance(seed, cases):
    rng = _rng(seed, 45)
    x = rng.standard_normal(3)
    x /= np.linalg.norm(x)
    proj = algebra.gen_product_outer(tensor.outer_power(x, 2), tensor.outer_power(x, 2))
    k = 7
    model = bounds.SumModel.rademacher([proj] * k)
    worst = abs(bounds.variance_even(model) - k)
    return _result("projector-variance-linearity", worst, 1e-10)


def _prop_subsample_scaling(seed, cases):
    rng = _rng(seed, 46)
    pop = [tensor.random_e_symmetric(rng, 1, 3) for _ in range(4)]
    model = bounds.SumModel.subsample(pop, sample_size=2)
    n, s = 4, 2
    centered = model.components
    acc = sum(
        (algebra.matricize(c) @ algebra.matricize(c) for c in centered),
        np.zeros((3, 3)),
    )
    nu_direct = float(np.abs(np.linalg.eigvalsh(acc * (n / s))).max())
    l_direct = (n / s) * max(
        float(np.linalg.eigvalsh(algebra.matricize(c))[-1]) for c in centered
    )
    worst = max(
        abs(bounds.variance_even(model) - nu_direct) / max(1.0, nu_direct),
        abs(bounds.uniform_bound_L(model, "even") - l_direct) / max(1.0, l_direct),
    )
    return _result("subsample-exact-enumeration", worst, 1e-12)


ALGEBRA_PROPS = [
    _prop_linearize_bijective,
    _prop_transpose_involution,
    _prop_outer_kron,
    _prop_apply_power_quadratic,
    _prop_homomorphism,
    _prop_product_transpose,
    _prop_identity_neutral,
    _prop_gen_product_identities,
    _prop_gen_product_even_reduction,
    _prop_gram_symmetry,
    _prop_matricize_roundtrip,
    _prop_trace_frobenius,
]

SPECTRAL_PROPS = [
    _prop_sym_eig_contract,
    _prop_evd_reconstruction,
    _prop_trace_spectrum,
    _prop_evd_hadamard_square,
    _prop_dilation_norm,
    _prop_norm_chain,
    _prop_gen_norm_even_symmetric,
    _prop_z_lower_bound,
    _prop_epsd_sampled_psd,
    _prop_counterexample,
]

BOUNDS_PROPS = [
    _prop_formula_spot_values,
    _prop_tail_monotonicity,
    _prop_matrix_reduction,
    _prop_variance_matricized,
    _prop_intrinsic_identity,
    _prop_intrinsic_vs_general,
    _prop_centering_annihilation,
    _prop_projector_variance,
    _prop_subsample_scaling,
]

SUITES = {
    "algebra": ALGEBRA_PROPS,
    "spectral": SPECTRAL_PROPS,
    "bounds": BOUNDS_PROPS,
}


def suite_names() -> list:
    return sorted(SUITES)


def run_suite(name: str, seed: int = 0, cases: int = 100) -> list:
    """Run one named suite; 'all' concatenates every suite."""
    if name == "all":
        props = [p for key in sorted(SUITES) for p in SUITES[key]]
    elif name in SUITES:
        props = SUITES[name]
    else:
        raise ValueError(f"unknown suite {name!r}")
    return [prop(seed, cases) for prop in props]
