"""Certified brackets for spectral radii and convolution operator norms.

Bound provenance, kept strict throughout:

  upper bounds   power certificates ||f^(2^k)||_1^(1/2^k) (submultiplicativity),
                 and Riesz-Thorin interpolation between the l1 and l2 endpoint
                 norms.  Nothing else ever produces an upper bound.
  lower bounds   trace moments m_(2n) = (f^(2n))(e) = ||f^n||_2^2 for Hermitian
                 elements (their 2n-th roots increase to the reduced-C* radius
                 because the point mass at the identity is a faithful trace
                 vector), Rayleigh quotients of ball compressions (power
                 iteration, deterministic start at delta_e), and explicit test
                 vectors for l^p operator norms.
  estimates      ratio/extrapolation point values; attached for reporting,
                 never used as bounds.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .algebra import (
    AlgebraElement,
    convolve,
    doubling_sequence,
    involute,
    is_hermitian,
    p_norm,
    power_sequence,
    weighted_l2_moment,
)
from .errors import (
    BudgetExceededError,
    InexactInputError,
    NonAbelianError,
    NonHermitianError,
    SpecRadLabError,
)
from .estimates import OUTWARD, Certificate, SpectralEstimate, conjugate_exponent, running_min
from .groups import GroupElement, get_group

DEFAULT_MAX_SUPPORT = 2_000_000
DEFAULT_MAX_PAIRS = 40_000_000


def _require_exact(f: AlgebraElement, tol: float = 0.0):
    if f.dropped_mass > tol:
        raise InexactInputError(
            f"estimator needs exact input; dropped mass {f.dropped_mass} > {tol}"
        )


def _require_hermitian(f: AlgebraElement, tol: float = 1e-12):
    if not is_hermitian(f, tol):
        raise NonHermitianError("operation is restricted to Hermitian elements")


# ---------------------------------------------------------------------------
# l1 power certificates
# ---------------------------------------------------------------------------

def l1_power_certificates(f: AlgebraElement, max_doublings: int,
                          max_support: int = DEFAULT_MAX_SUPPORT) -> list[float]:
    """||f^(2^k)||_1^(1/2^k) for k = 0..max_doublings (or until the budget).

    Each entry upper-bounds the l1 spectral radius; the sequence is
    nonincreasing up to floating rounding.
    """
    certs = []
    for k, g in doubling_sequence(f, max_doublings, max_support=max_support):
        certs.append(p_norm(g, 1) ** (1.0 / (1 << k)))
    return certs


def l1_spectral_radius(f: AlgebraElement, max_doublings: int = 6,
                       max_support: int = DEFAULT_MAX_SUPPORT) -> SpectralEstimate:
    """Bracket for the l1 spectral radius of an exact element.

    The upper certificate is the doubling-power sequence.  A nonzero lower
    bound is only available through the Hermitian trace-moment route (the
    reduced-C* radius is dominated by the l1 radius); for non-Hermitian input
    the lower bound stays 0.  For elements with nonnegative coefficients the
    bracket collapses: every power norm equals ||f||_1^n exactly.
    """
    _require_exact(f)
    if len(f) == 0:
        z = Certificate("zero element", [0.0])
        return SpectralEstimate(0.0, 0.0, z, z, "power-certificates", "r_l1")

    nonneg = all(c.imag == 0.0 and c.real >= 0.0 for _, c in f.payload_items())
    powers = []
    for k, g in doubling_sequence(f, max_doublings, max_support=max_support):
        powers.append((k, g))
    upper_raw = [p_norm(g, 1) ** (1.0 / (1 << k)) for k, g in powers]
    upper_seq = running_min(upper_raw)
    upper = upper_seq[-1] * (1 + OUTWARD)

    if nonneg:
        n1 = p_norm(f, 1)
        lower = n1 * (1 - OUTWARD)
        lower_cert = Certificate("nonnegative element: ||f||_1 is exact", [n1])
    elif is_hermitian(f):
        moments = cstar_radius_hermitian(f, max_n=min(2 ** max_doublings, 64),
                                         max_doublings=max_doublings,
                                         max_support=max_support)
        lower = moments.lower
        lower_cert = moments.lower_certificate
    else:
        lower = 0.0
        lower_cert = Certificate("no general lower bound for non-Hermitian input", [0.0])

    point, point_extras = _l1_point_estimate(f, powers, max_support)
    return SpectralEstimate(
        lower=min(lower, upper),
        upper=upper,
        lower_certificate=lower_cert,
        upper_certificate=Certificate("running min of ||f^(2^k)||_1^(1/2^k)", upper_seq),
        method="power-certificates",
        target="r_l1",
        point_estimate=point,
        extras={"raw_roots": upper_raw, "nonnegative": nonneg, **point_extras},
    )


def _l1_point_estimate(f, powers, max_support):
    """Ratio point estimate sqrt(||f^(m+2)||_1 / ||f^m||_1) at the largest
    computed power m = 2^K (two steps to dodge parity oscillation), with an
    Aitken fallback when the extra multiplies do not fit the budget."""
    k, g = powers[-1]
    m = 1 << k
    try:
        g1 = convolve(g, f, max_support=max_support)
        g2 = convolve(g1, f, max_support=max_support)
        n0, n2 = p_norm(g, 1), p_norm(g2, 1)
        if n0 > 0:
            return math.sqrt(n2 / n0), {"point_method": f"two-step ratio at n={m}"}
    except BudgetExceededError:
        pass
    roots = [p_norm(gg, 1) ** (1.0 / (1 << kk)) for kk, gg in powers]
    if len(roots) >= 2 and roots[-2] > 0:
        return roots[-1] ** 2 / roots[-2], {"point_method": "aitken on doubling roots"}
    return roots[-1], {"point_method": "last root"}


# ---------------------------------------------------------------------------
# reduced-C* radius for Hermitian elements
# ---------------------------------------------------------------------------

def trace_moments(f: AlgebraElement, max_n: int,
                  max_support: int = DEFAULT_MAX_SUPPORT) -> list[float]:
    """m_(2n) = (f^(2n))(e) = ||f^n||_2^2 for n = 1..max_n (budget permitting).

    The second equality holds because f is Hermitian, so f^n is too and
    (f^(2n))(e) = sum_s f^n(s) conj(f^n(s)).
    """
    return [weighted_l2_moment(g) for _, g in power_sequence(f, max_n,
                                                             max_support=max_support)]


def moment_extrapolation(moments: list[float]) -> dict | None:
    """Least-squares fit of log m_(2n) = log C + 2n log rho - gamma log n over
    the last third of the sequence.  Returns a labeled point estimate, never a
    bound; the power-law exponent gamma is fitted rather than assumed."""
    ns = np.arange(1, len(moments) + 1, dtype=float)
    third = max(3, (2 * len(moments)) // 3)
    window = slice(third - 1, len(moments))
    n_w = ns[window]
    m_w = np.array(moments[window], dtype=float)
    if len(n_w) < 3 or np.any(m_w <= 0):
        return None
    design = np.stack([np.ones_like(n_w), 2.0 * n_w, -np.log(n_w)], axis=1)
    coef, *_ = np.linalg.lstsq(design, np.log(m_w), rcond=None)
    return {
        "rho": float(np.exp(coef[1])),
        "gamma": float(coef[2]),
        "log_c": float(coef[0]),
        "window_start_n": int(n_w[0]),
        "window_end_n": int(n_w[-1]),
    }


def cstar_radius_hermitian(f: AlgebraElement, max_n: int = 32,
                           max_doublings: int = 6,
                           max_support: int = DEFAULT_MAX_SUPPORT) -> SpectralEstimate:
    """Bracket for the reduced-C* spectral radius of a Hermitian element.

    lower certificate: m_(2n)^(1/2n), nondecreasing (power-mean inequality for
    the spectral measure of the trace vector) and converging to the radius.
    upper certificate: l1 doubling roots (the C* radius is dominated by the
    l1 radius).  The fitted extrapolation is attached as a point estimate.
    """
    _require_exact(f)
    _require_hermitian(f)
    if len(f) == 0:
        z = Certificate("zero element", [0.0])
        return SpectralEstimate(0.0, 0.0, z, z, "trace-moments", "r_cstar")

    moments = trace_moments(f, max_n, max_support=max_support)
    lower_raw = [m ** (1.0 / (2 * n)) for n, m in enumerate(moments, start=1)]
    lower = max(lower_raw) * (1 - OUTWARD)

    upper_raw = l1_power_certificates(f, max_doublings, max_support=max_support)
    upper_seq = running_min(upper_raw)
    upper = min(upper_seq[-1], p_norm(f, 1)) * (1 + OUTWARD)

    fit = moment_extrapolation(moments)
    return SpectralEstimate(
        lower=min(lower, upper),
        upper=upper,
        lower_certificate=Certificate("trace-moment roots m_(2n)^(1/2n)", lower_raw),
        upper_certificate=Certificate("l1 doubling roots", upper_seq),
        method="trace-moments",
        target="r_cstar",
        point_estimate=fit["rho"] if fit else None,
        extras={"moments": moments, "fit": fit},
    )


# ---------------------------------------------------------------------------
# ball-compression lower bounds (power iteration)
# ---------------------------------------------------------------------------

def truncation_ball(f: AlgebraElement, radius: int,
                    max_elements: int = 500_000) -> list:
    """Payloads of the largest product set (supp f u supp f* u {e})^n with
    n <= radius that fits the element budget; insertion (BFS) order."""
    g = get_group(f.group_id)
    gens = list(dict.fromkeys(
        list(f.support_payloads())
        + [g.inverse_payload(p) for p in f.support_payloads()]
        + [g.identity_payload()]
    ))
    mul = g.multiply_payloads
    seen = dict.fromkeys([g.identity_payload()])
    frontier = list(seen)
    for _ in range(radius):
        new = []
        for u in frontier:
            for p in gens:
                w = mul(u, p)
                if w not in seen:
                    seen[w] = None
                    new.append(w)
        if len(seen) > max_elements:
            break
        frontier = new
        if not new:
            break
    return list(seen)


class _BallOperator:
    """lambda(f) from vectors on a ball B to vectors on supp(f) * B, as
    per-generator index maps (each map is injective, so scatters vectorize)."""

    def __init__(self, f: AlgebraElement, ball: list):
        g = get_group(f.group_id)
        mul = g.multiply_payloads
        self.ball_index = {p: i for i, p in enumerate(ball)}
        out_index: dict = {}
        self.terms = []
        for s, c in f.payload_items():
            idx = np.empty(len(ball), dtype=np.int64)
            for i, b in enumerate(ball):
                t = mul(s, b)
                j = out_index.get(t)
                if j is None:
                    j = len(out_index)
                    out_index[t] = j
                idx[i] = j
            self.terms.append((complex(c), idx))
        self.n_out = len(out_index)
        self.n_in = len(ball)

    def apply(self, v: np.ndarray) -> np.ndarray:
        u = np.zeros(self.n_out, dtype=complex)
        for c, idx in self.terms:
            u[idx] += c * v
        return u

    def apply_adjoint(self, u: np.ndarray) -> np.ndarray:
        w = np.zeros(self.n_in, dtype=complex)
        for c, idx in self.terms:
            w += np.conj(c) * u[idx]
        return w


def cstar_norm_lower_truncation(f: AlgebraElement, radius: int,
                                iters: int = 10_000, tol: float = 1e-10,
                                max_elements: int = 500_000) -> float:
    """Certified lower bound on the l2 operator norm of convolution by f.

    Power iteration on the compression of lambda(f)* lambda(f) to vectors
    supported in the radius-ball, started at delta_e (deterministic).  Every
    Rayleigh quotient ||lambda(f) v||^2 / ||v||^2 is a valid lower bound for
    the squared operator norm, and the iteration is monotone for this
    positive-semidefinite compression, so early termination stays sound.
    """
    if len(f) == 0:
        return 0.0
    ball = truncation_ball(f, radius, max_elements=max_elements)
    op = _BallOperator(f, ball)
    e_idx = op.ball_index[get_group(f.group_id).identity_payload()]
    v = np.zeros(op.n_in, dtype=complex)
    v[e_idx] = 1.0
    rq_prev = -math.inf
    rq = 0.0
    for it in range(iters):
        u = op.apply(v)
        rq = float(np.vdot(u, u).real)  # v is unit, so this is the Rayleigh quotient
        if rq == 0.0:
            # orthogonal-start pathology: restart from the constant vector
            v = np.ones(op.n_in, dtype=complex) / math.sqrt(op.n_in)
            u = op.apply(v)
            rq = float(np.vdot(u, u).real)
            if rq == 0.0:
                return 0.0
        if rq - rq_prev <= tol * max(rq, 1e-300) and it > 0:
            break
        rq_prev = rq
        w = op.apply_adjoint(u)
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            break
        v = w / nw
    return math.sqrt(max(rq, rq_prev, 0.0)) * (1 - OUTWARD)


# ---------------------------------------------------------------------------
# l2 upper bounds and l^p interpolation
# ---------------------------------------------------------------------------

def l2_opnorm_upper_certificates(f: AlgebraElement, max_doublings: int = 6,
                                 max_support: int = DEFAULT_MAX_SUPPORT) -> list[float]:
    """Nonincreasing certified upper bounds on ||lambda_2(f)||.

    Hermitian route: the operator norm equals the C*-radius, so l1 doubling
    roots of f bound it.  General route: ||lambda_2(f)||^2 equals the C*
    radius of the Hermitian f* * f, bounded by its l1 doubling roots.  The l1
    norm of f itself caps every entry.
    """
    n1 = p_norm(f, 1)
    if len(f) == 0:
        return [0.0]
    try:
        if is_hermitian(f):
            roots = l1_power_certificates(f, max_doublings, max_support=max_support)
        else:
            g = convolve(involute(f), f, max_support=max_support)
            roots = [math.sqrt(r) for r in
                     l1_power_certificates(g, max_doublings, max_support=max_support)]
    except BudgetExceededError:
        roots = [n1]
    return running_min([min(r, n1) for r in roots])


def lp_opnorm_bounds(f: AlgebraElement, p, radius: int = 12,
                     max_doublings: int = 6, ascent_steps: int = 8,
                     max_support: int = DEFAULT_MAX_SUPPORT) -> SpectralEstimate:
    """Certified bracket for ||lambda_p(f)|| with p in [1, 2].

    upper: Riesz-Thorin between the l1 endpoint (norm ||f||_1) and the l2
    endpoint (any certified upper bound U2), giving
    ||f||_1^(2/p - 1) * U2^(2 - 2/p).
    lower: the best of explicit test vectors: delta_e, the nonnegative ascent
    iterates |f|^k delta_e, and ball indicators; each ratio
    ||f*v||_p / ||v||_p is individually a valid lower bound.
    """
    p = Fraction(p).limit_denominator(10**6)
    if not 1 <= p <= 2:
        raise SpecRadLabError(f"lp bounds implemented for p in [1, 2], got {p}")
    pf = float(p)
    if len(f) == 0:
        z = Certificate("zero element", [0.0])
        return SpectralEstimate(0.0, 0.0, z, z, "interpolation", f"opnorm_p[{p}]")

    n1 = p_norm(f, 1)
    e_l1 = float(2 / p - 1)  # exact fraction exponents, evaluated once
    e_l2 = float(2 - 2 / p)
    u2_certs = l2_opnorm_upper_certificates(f, max_doublings, max_support=max_support)
    upper_seq = running_min([n1 ** e_l1 * u ** e_l2 for u in u2_certs])
    upper = upper_seq[-1] * (1 + OUTWARD)

    candidates = _lp_test_vectors(f, radius, ascent_steps, max_support)
    ratios = []
    for label, v in candidates:
        nv = p_norm(v, pf)
        if nv == 0:
            continue
        try:
            fv = convolve(f, v, max_support=max_support)
        except BudgetExceededError:
            continue
        ratios.append((p_norm(fv, pf) / nv, label))
    best = 0.0
    lower_seq, labels = [], []
    for r, label in ratios:
        best = max(best, r)
        lower_seq.append(best)
        labels.append(label)
    lower = best * (1 - OUTWARD)

    return SpectralEstimate(
        lower=min(lower, upper),
        upper=upper,
        lower_certificate=Certificate("test-vector ratios ||f*v||_p/||v||_p (running max)",
                                      lower_seq or [0.0]),
        upper_certificate=Certificate("l1/l2 interpolation of doubling certificates",
                                      upper_seq),
        method="interpolation+ascent",
        target=f"opnorm_p[{p}]",
        extras={"p": str(p), "test_vectors": labels, "u2_upper": u2_certs[-1]},
    )


def _lp_test_vectors(f, radius, ascent_steps, max_support):
    """Deterministic test-vector family: delta_e, nonnegative ascent iterates
    of |f|, and ball indicators at two radii."""
    gid = f.group_id
    g = get_group(gid)
    out = [("delta_e", AlgebraElement(gid, {g.identity_payload(): 1.0}))]
    absf = AlgebraElement(gid, {pl: abs(c) for pl, c in f.payload_items()})
    u = out[0][1]
    for k in range(1, ascent_steps + 1):
        try:
            u = convolve(absf, u, max_support=max_support)
        except BudgetExceededError:
            break
        n2 = p_norm(u, 2)
        if n2 == 0 or not math.isfinite(n2):
            break
        u = u.scaled(1.0 / n2)
        out.append((f"ascent |f|^{k}", u))
    for r in sorted({max(1, radius // 2), radius}):
        ball = truncation_ball(f, r, max_elements=200_000)
        out.append((f"ball indicator r={r}", AlgebraElement(gid, {p: 1.0 for p in ball})))
    return out


def pfstar_norm_bounds(f: AlgebraElement, p, radius: int = 12,
                       max_doublings: int = 6,
                       max_support: int = DEFAULT_MAX_SUPPORT) -> SpectralEstimate:
    """Bracket for max(||lambda_p(f)||, ||lambda_q(f)||), q conjugate.

    The q-side never needs exponents above 2: the duality pairing makes
    lambda_q(f) and lambda_p(f*) adjoints of one another, so its norm equals
    ||lambda_p(f*)|| and both sides are computed at the same p in (1, 2].
    """
    p = Fraction(p).limit_denominator(10**6)
    bp = lp_opnorm_bounds(f, p, radius=radius, max_doublings=max_doublings,
                          max_support=max_support)
    if is_hermitian(f):
        est = bp
        extras = dict(est.extras)
        extras["hermitian_shortcut"] = True
        return SpectralEstimate(est.lower, est.upper, est.lower_certificate,
                                est.upper_certificate, "pf-max", f"pfstar_p[{p}]",
                                est.point_estimate, extras)
    bq = lp_opnorm_bounds(involute(f), p, radius=radius, max_doublings=max_doublings,
                          max_support=max_support)
    m = min(len(bp.upper_certificate.values), len(bq.upper_certificate.values))
    upper_seq = [max(a, b) for a, b in zip(bp.upper_certificate.values[:m],
                                           bq.upper_certificate.values[:m])]
    lower_seq = []
    best = 0.0
    for v in bp.lower_certificate.values + bq.lower_certificate.values:
        best = max(best, v)
        lower_seq.append(best)
    return SpectralEstimate(
        lower=min(max(bp.lower, bq.lower), max(bp.upper, bq.upper)),
        upper=max(bp.upper, bq.upper),
        lower_certificate=Certificate("max of p-side and q-side test vectors", lower_seq),
        upper_certificate=Certificate("pointwise max of p/q interpolation bounds", upper_seq),
        method="pf-max",
        target=f"pfstar_p[{p}]",
        extras={"p_side": bp.to_json(), "q_side": bq.to_json()},
    )


def pfstar_radius_bracket(f: AlgebraElement, p, max_doublings: int = 4,
                          radius: int = 10,
                          max_support: int = DEFAULT_MAX_SUPPORT) -> SpectralEstimate:
    """Bracket for the spectral radius in the max(p,q) operator algebra.

    lower: the reduced-C* lower certificate (the C* algebra sits under a
    dense continuous *-homomorphism, so its radius is dominated).
    upper: min over k of the PF-norm upper bound of f^(2^k), to the 2^-k power.
    """
    _require_hermitian(f)
    _require_exact(f)
    cs = cstar_radius_hermitian(f, max_n=min(2 ** max_doublings, 32),
                                max_doublings=max_doublings, max_support=max_support)
    trunc = cstar_norm_lower_truncation(f, radius, max_elements=200_000)
    lower = max(cs.lower, trunc)

    upper_entries = []
    for k, g in doubling_sequence(f, max_doublings, max_support=max_support):
        try:
            u = pfstar_norm_bounds(g, p, radius=max(2, radius // (1 << k)),
                                   max_doublings=max(1, max_doublings - k),
                                   max_support=max_support).upper
        except BudgetExceededError:
            break
        upper_entries.append(u ** (1.0 / (1 << k)))
    upper_seq = running_min(upper_entries)
    upper = upper_seq[-1] * (1 + OUTWARD)

    lower_cert_vals = cs.lower_certificate.values + [trunc]
    best = 0.0
    lower_seq = []
    for v in lower_cert_vals:
        best = max(best, v)
        lower_seq.append(best)
    return SpectralEstimate(
        lower=min(lower, upper),
        upper=upper,
        lower_certificate=Certificate("trace moments + ball compression", lower_seq),
        upper_certificate=Certificate("PF-norm doubling roots", upper_seq),
        method="pf-radius",
        target=f"pfstar_radius_p[{p}]",
        point_estimate=cs.point_estimate,
        extras={"cstar": cs.to_json()},
    )


# ---------------------------------------------------------------------------
# exact oracles on abelian / finite pieces
# ---------------------------------------------------------------------------

def _fwht(vec: np.ndarray) -> np.ndarray:
    v = vec.copy()
    h = 1
    n = len(v)
    while h < n:
        for i in range(0, n, 2 * h):
            a = v[i:i + h].copy()
            b = v[i + h:i + 2 * h].copy()
            v[i:i + h] = a + b
            v[i + h:i + 2 * h] = a - b
        h *= 2
    return v


def abelian_spectral_radius_bracket(f: AlgebraElement, tol: float = 1e-8,
                                    max_cells: int = 2_000_000) -> tuple[float, float]:
    """Certified bracket for sup over characters of |f-hat|.

    Exact (to rounding) for the Z2 direct sum via a Walsh-Hadamard transform;
    for Z^d (and rank-1 free, which is Z) a branch-and-bound refinement of
    the torus using the derivative bound of a trigonometric polynomial,
    certified to the requested tolerance.
    """
    g = get_group(f.group_id)
    if len(f) == 0:
        return (0.0, 0.0)
    if g.family == "z2sum":
        masks = list(f.support_payloads())
        bits = max(max(m.bit_length() for m in masks), 1)
        if bits > 24:
            raise BudgetExceededError(f"character block 2^{bits} too large")
        vec = np.zeros(1 << bits, dtype=complex)
        for p, c in f.payload_items():
            vec[p] = c
        vals = np.abs(_fwht(vec))
        m = float(vals.max())
        return (m * (1 - 1e-12), m * (1 + 1e-12))
    if g.family == "zd":
        pts = [(np.array(p, dtype=float), c) for p, c in f.payload_items()]
        return _torus_sup_bracket(pts, g.dim, tol, max_cells)
    if g.family == "free" and g.rank == 1:
        pts = [(np.array([float(sum(p))]), c) for p, c in f.payload_items()]
        return _torus_sup_bracket(pts, 1, tol, max_cells)
    raise NonAbelianError(f"{f.group_id} has no abelian character oracle")


def abelian_spectral_radius_exact(f: AlgebraElement, tol: float = 1e-8) -> float:
    lo, hi = abelian_spectral_radius_bracket(f, tol=tol)
    return 0.5 * (lo + hi)


def _torus_sup_bracket(pts, d, tol, max_cells):
    exps = np.stack([e for e, _ in pts])            # (m, d)
    coeffs = np.array([c for _, c in pts])          # (m,)
    lip = np.abs(coeffs)[:, None] * np.abs(exps)    # per-dimension derivative bounds
    L = lip.sum(axis=0)                             # (d,)

    def value_at(thetas):  # thetas: (n, d)
        return np.abs(np.exp(1j * (thetas @ exps.T)) @ coeffs)

    centers = np.full((1, d), math.pi)
    halves = np.full((1, d), math.pi)
    best_lo = float(value_at(centers).max())
    upper_cap = best_lo
    total = 1
    while len(centers) > 0:
        vals = value_at(centers)
        best_lo = max(best_lo, float(vals.max()))
        bound = vals + halves @ L
        keep = bound > best_lo + tol
        if not np.any(keep):
            return (best_lo, best_lo + tol)
        centers, halves, bound = centers[keep], halves[keep], bound[keep]
        total += 2 * len(centers)
        if total > max_cells:
            return (best_lo, float(bound.max()))
        axis = np.argmax(halves, axis=1)
        h = halves.copy()
        h[np.arange(len(h)), axis] *= 0.5
        off = np.zeros_like(centers)
        off[np.arange(len(off)), axis] = h[np.arange(len(h)), axis]
        centers = np.concatenate([centers - off, centers + off])
        halves = np.concatenate([h, h])
    return (best_lo, best_lo + tol)


def finite_subgroup_radius_exact(f: AlgebraElement, max_order: int = 30_000) -> float:
    """Spectral radius of f in the group algebra of the finite subgroup
    generated by its support: max |eigenvalue| of the dense left-regular
    representation matrix.  Exact up to dense linear algebra."""
    g = get_group(f.group_id)
    mul = g.multiply_payloads
    gens = list(dict.fromkeys(
        list(f.support_payloads()) + [g.inverse_payload(p) for p in f.support_payloads()]
    ))
    seen = dict.fromkeys([g.identity_payload()])
    frontier = list(seen)
    while frontier:
        new = []
        for u in frontier:
            for p in gens:
                w = mul(u, p)
                if w not in seen:
                    seen[w] = None
                    new.append(w)
        if len(seen) > max_order:
            raise BudgetExceededError(
                f"generated subgroup exceeds {max_order} elements; not locally finite here"
            )
        frontier = new
    order = len(seen)
    index = {p: i for i, p in enumerate(seen)}
    M = np.zeros((order, order), dtype=complex)
    for s, c in f.payload_items():
        for t, j in index.items():
            M[index[mul(s, t)], j] += c
    if is_hermitian(f):
        eigs = np.linalg.eigvalsh((M + M.conj().T) / 2)
    else:
        eigs = np.linalg.eigvals(M)
    return float(np.abs(eigs).max())
