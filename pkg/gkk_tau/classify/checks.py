"""
Class membership tests and matrix inequality checks.

Each check returns a ClassReport whose verdict is derived from a numeric
margin through ToleranceConfig.judge, together with a witness naming the
binding or violated condition.

:return : Certifier functions.
:return: p_matrix_check, dispersal_sign_check, omega_tau_check, stability_check, varga_cone_check, hadamard_fischer_check, newton_check, m_matrix_check.
"""

from typing import Dict, List, Sequence
import logging
import math

import numpy as np

from gkk_tau.config import DEFAULT_TOLERANCES, FAIL, PASS, UNDEFINED, ToleranceConfig, Verdict
from gkk_tau.errors import (
    ConfigError,
    ConvergenceError,
    InfeasibleEnumerationError,
    InputError,
    OrderTooLargeError,
)
from gkk_tau.minors.engine import (
    dispersal_pair_arrays,
    estimate_pair_count,
    gather_submatrices,
    mask_sizes,
    masks_of_size,
    minor_products,
    positions_array,
)
from gkk_tau.models.matrix import INF, ExtendedReal, Matrix, Spectrum
from gkk_tau.models.minors import IndexSet, MinorTable, popcounts
from gkk_tau.models.reports import (
    ClassReport,
    OmegaProfile,
    eigenvalue_witness,
    pair_witness,
    subset_witness,
)
from gkk_tau.parallel import parallel_map

logger = logging.getLogger(__name__)

PAIR_GUARD = 10**8
HF_PAIR_GUARD = 10**9
MAX_OMEGA_ORDER = 16
PAIR_CHUNK = 1 << 16


def combine_reports(name: str, components: Sequence[ClassReport]) -> ClassReport:
    """
    Conjunction of several reports.

    Fails if any component fails, is undefined if any is undefined and none
    fails. The margin is the smallest component margin; the witness comes
    from the first failing component, otherwise from the binding one.

    :param name: Name of the combined report.
    :param components: Component reports, in evaluation order.
    :return : ClassReport.
    :return: The combined report.
    """
    failing = [r for r in components if r.verdict == FAIL]
    undefined = [r for r in components if r.verdict == UNDEFINED]
    binding = min(components, key=lambda r: r.margin)
    source = failing[0] if failing else binding
    verdict = FAIL if failing else (UNDEFINED if undefined else PASS)
    witness = dict(source.witness, component=source.name) if source.witness else None
    return ClassReport(
        name=name,
        verdict=verdict,
        margin=binding.margin,
        witness=witness,
        checked_count=sum(r.checked_count for r in components),
        marginal=any(r.marginal for r in components),
        details={"components": {r.name: r.to_dict() for r in components}},
    )


def p_matrix_check(t: MinorTable, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ClassReport:
    """
    P-matrix test: every nonempty principal minor is positive.

    :param t: Minor table.
    :param cfg: Tolerances.
    :return : ClassReport.
    :return: Margin = smallest principal minor, witness = its index set.
    """
    margin, mask = t.nonempty_min()
    verdict, marginal = cfg.judge(margin, strict=True)
    witness = dict(subset_witness(IndexSet(mask, t.n)), minor=margin)
    return ClassReport(
        name="p",
        verdict=verdict,
        margin=margin,
        witness=witness,
        checked_count=len(t) - 1,
        marginal=marginal,
    )


def dispersal_sign_check(
    A: Matrix,
    d: int,
    strict: bool = False,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    jobs: int = 1,
) -> ClassReport:
    """
    Sign condition A[alpha,beta] * A[beta,alpha] >= 0 over dispersal 1..d.

    In strict mode each product of size-k minors is divided by
    (1 + max |a_ij|)^(2k) and must exceed tol_zero; the margin is then the
    smallest normalized product. Otherwise the margin is the smallest raw
    product and it must be >= -tol_zero.

    :param A: Matrix.
    :param d: Largest dispersal, 1 <= d <= n.
    :param strict: Require strict positivity.
    :param cfg: Tolerances.
    :param jobs: Worker count.
    :return : ClassReport.
    :return: Margin = extremal product, witness = extremal pair.
    """
    n = A.n
    if not 1 <= d <= n:
        raise ConfigError(f"Dispersal bound must lie in 1..{n}, got {d}")
    estimate = estimate_pair_count(n, d)
    if estimate > PAIR_GUARD:
        raise InfeasibleEnumerationError(
            f"Dispersal check at n={n}, d={d} needs {estimate} pairs (guard {PAIR_GUARD})"
        )
    name = ("strict-" if strict else "") + f"dispersal<={d}"
    alpha_masks, beta_masks, dispersals = dispersal_pair_arrays(n, d, "at-most", min_d=1)
    count = int(alpha_masks.size)
    details: Dict[str, object] = {"d": d, "strict": strict}
    if count == 0:
        return ClassReport(name=name, verdict=PASS, margin=INF, checked_count=0, details=details)

    starts = list(range(0, count, PAIR_CHUNK))
    products = np.concatenate(
        parallel_map(
            lambda lo: minor_products(A, alpha_masks[lo:lo + PAIR_CHUNK], beta_masks[lo:lo + PAIR_CHUNK]),
            starts,
            jobs,
        )
    )
    if strict:
        sizes = mask_sizes(alpha_masks, n)
        scores = products / (1.0 + A.max_abs()) ** (2 * sizes)
        details["normalization"] = "product / (1 + max|a_ij|)^(2k) for size-k minors"
    else:
        scores = products
    idx = int(np.argmin(scores))
    margin = float(scores[idx])
    verdict, marginal = cfg.judge(margin, strict=strict)
    witness = dict(
        pair_witness(IndexSet(int(alpha_masks[idx]), n), IndexSet(int(beta_masks[idx]), n)),
        d=int(dispersals[idx]),
        product=float(products[idx]),
    )
    logger.debug(f"{name}: {count} pairs, margin {margin:.3e} at {witness}")
    return ClassReport(
        name=name,
        verdict=verdict,
        margin=margin,
        witness=witness,
        checked_count=count,
        marginal=marginal,
        details=details,
    )


def gkk_check(A: Matrix, t: MinorTable, cfg: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1) -> ClassReport:
    """
    GKK: P-matrix with nonnegative products of almost principal minors.

    :param A: Matrix.
    :param t: Minor table of A.
    :param cfg: Tolerances.
    :param jobs: Worker count.
    :return : ClassReport.
    :return: Conjunction of the P test and the dispersal-1 condition.
    """
    return combine_reports("gkk", [p_matrix_check(t, cfg), dispersal_sign_check(A, 1, False, cfg, jobs)])


def strict_gkk_check(
    A: Matrix, t: MinorTable, cfg: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1
) -> ClassReport:
    """
    Strict GKK: P-matrix with positive products of almost principal minors.

    :param A: Matrix.
    :param t: Minor table of A.
    :param cfg: Tolerances.
    :param jobs: Worker count.
    :return : ClassReport.
    :return: Conjunction of the P test and the strict dispersal-1 condition.
    """
    return combine_reports(
        "strict-gkk", [p_matrix_check(t, cfg), dispersal_sign_check(A, 1, True, cfg, jobs)]
    )


def sign_symmetric_check(A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1) -> ClassReport:
    """
    Sign symmetry: the product condition for minors of every dispersal.

    :param A: Matrix.
    :param cfg: Tolerances.
    :param jobs: Worker count.
    :return : ClassReport.
    :return: dispersal_sign_check with d = n.
    """
    report = dispersal_sign_check(A, A.n, False, cfg, jobs)
    return ClassReport(
        name="sign-sym",
        verdict=report.verdict,
        margin=report.margin,
        witness=report.witness,
        checked_count=report.checked_count,
        marginal=report.marginal,
        details=report.details,
    )


def l_values_of(A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1) -> np.ndarray:
    """
    l(A(alpha)) for every mask (entry 0 unused, set to +inf).

    :param A: Matrix of order n <= 16.
    :param cfg: Tolerances.
    :param jobs: Worker count.
    :return : ndarray of shape (2^n,).
    :return: Smallest real eigenvalue of every principal submatrix.
    """
    n = A.n
    if n > MAX_OMEGA_ORDER:
        raise OrderTooLargeError(f"Eigenvalue profiles are capped at order {MAX_OMEGA_ORDER}, got {n}")

    def solve(k: int) -> np.ndarray:
        masks = masks_of_size(n, k)
        pos = positions_array(masks, k)
        try:
            vals = np.linalg.eigvals(gather_submatrices(A.entries, pos, pos))
        except np.linalg.LinAlgError as e:
            raise ConvergenceError(f"Eigenvalue iteration failed for size-{k} submatrices: {e}") from e
        is_real = np.abs(vals.imag) <= cfg.tol_real * (1.0 + np.abs(vals))
        return np.min(np.where(is_real, vals.real, np.inf), axis=1)

    out = np.full(1 << n, np.inf)
    for k, lv in zip(range(1, n + 1), parallel_map(solve, range(1, n + 1), jobs)):
        out[masks_of_size(n, k)] = lv
    return out


def omega_tau_check(A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1) -> OmegaProfile:
    """
    Eigenvalue monotonicity (omega) and its nonnegative variant (tau).

    omega requires l finite on every nonempty principal submatrix and
    l(alpha) <= l(alpha minus one index) on every covering pair; tau adds
    l(A) >= 0.

    :param A: Matrix of order n <= 16.
    :param cfg: Tolerances.
    :param jobs: Worker count.
    :return : OmegaProfile.
    :return: l over all nonempty subsets with both verdicts.
    """
    n = A.n
    lv = l_values_of(A, cfg, jobs)
    full = (1 << n) - 1
    l_values = {mask: float(lv[mask]) for mask in range(1, full + 1)}
    scale = 1.0 + A.max_abs()
    infinite = np.flatnonzero(np.isinf(lv[1:])) + 1

    if infinite.size:
        mask = int(infinite[0])
        omega = ClassReport(
            name="omega",
            verdict=FAIL,
            margin=-INF,
            witness=dict(subset_witness(IndexSet(mask, n)), l="+inf"),
            checked_count=full,
            details={"reason": "principal submatrix without real eigenvalue"},
        )
    else:
        best_margin, best_pair = INF, None
        covering = 0
        for i in range(n):
            bit = 1 << i
            alphas = np.arange(1, full + 1)
            alphas = alphas[(alphas & bit) != 0]
            alphas = alphas[popcounts(n)[alphas] >= 2]
            if alphas.size == 0:
                continue
            betas = alphas ^ bit
            slack = lv[betas] - lv[alphas]
            covering += alphas.size
            j = int(np.argmin(slack))
            if slack[j] < best_margin:
                best_margin, best_pair = float(slack[j]), (int(alphas[j]), int(betas[j]))
        verdict, marginal = cfg.judge(best_margin, scale=scale)
        witness = None
        if best_pair is not None:
            witness = dict(
                pair_witness(IndexSet(best_pair[0], n), IndexSet(best_pair[1], n), kind="covering-pair"),
                l_alpha=float(lv[best_pair[0]]),
                l_beta=float(lv[best_pair[1]]),
            )
        omega = ClassReport(
            name="omega",
            verdict=verdict,
            margin=best_margin,
            witness=witness,
            checked_count=full + covering,
            marginal=marginal,
        )

    l_full = float(lv[full])
    if omega.verdict != PASS:
        tau = ClassReport(
            name="tau",
            verdict=FAIL,
            margin=min(omega.margin, l_full),
            witness=dict(omega.witness or {}, component="omega"),
            checked_count=omega.checked_count + 1,
            marginal=omega.marginal,
        )
    else:
        l_verdict, l_marginal = cfg.judge(l_full, scale=scale)
        margin = min(omega.margin, l_full)
        witness = omega.witness
        if l_verdict == FAIL or l_full <= omega.margin:
            witness = dict(subset_witness(IndexSet(full, n)), l=l_full)
        tau = ClassReport(
            name="tau",
            verdict=l_verdict,
            margin=margin,
            witness=witness,
            checked_count=omega.checked_count + 1,
            marginal=omega.marginal or l_marginal,
        )
    return OmegaProfile(n=n, l_values=l_values, omega=omega, tau=tau)


def stability_check(s: Spectrum, cfg: ToleranceConfig = DEFAULT_TOLERANCES, scale: float = 1.0) -> ClassReport:
    """
    Positive stability: the spectrum lies in the open right half plane.

    :param s: Spectrum.
    :param cfg: Tolerances.
    :param scale: Magnitude scale of the source matrix.
    :return : ClassReport.
    :return: Margin = smallest real part, witness = that eigenvalue.
    """
    idx = int(np.argmin(s.values.real))
    margin = float(s.values[idx].real)
    verdict, marginal = cfg.judge(margin, scale=scale, strict=True)
    return ClassReport(
        name="stable",
        verdict=verdict,
        margin=margin,
        witness=eigenvalue_witness(s.values[idx]),
        checked_count=s.n,
        marginal=marginal,
    )


def varga_cone_check(
    s: Spectrum, l: ExtendedReal, n: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES, scale: float = 1.0
) -> ClassReport:
    """
    Cone condition |arg(lambda - l(A))| <= pi/2 - pi/n for every eigenvalue.

    Undefined when l(A) = +inf. An eigenvalue equal to l(A) counts as
    inside the cone.

    :param s: Spectrum.
    :param l: l(A).
    :param n: Order.
    :param cfg: Tolerances.
    :param scale: Magnitude scale of the source matrix.
    :return : ClassReport.
    :return: Margin = smallest angular slack, witness = binding eigenvalue.
    """
    bound = math.pi / 2 - math.pi / n
    details = {"bound": bound}
    if math.isinf(l):
        return ClassReport(
            name="varga",
            verdict=UNDEFINED,
            margin=INF,
            checked_count=0,
            details={**details, "reason": "l(A) = +inf, the cone has no apex"},
        )
    slacks: List[float] = []
    for z in s.values:
        w = complex(z) - l
        if cfg.is_zero(w, scale):
            slacks.append(max(bound, 0.0))
        else:
            slacks.append(bound - abs(math.atan2(w.imag, w.real)))
    idx = int(np.argmin(slacks))
    margin = float(slacks[idx])
    verdict, marginal = cfg.judge(margin)
    return ClassReport(
        name="varga",
        verdict=verdict,
        margin=margin,
        witness=eigenvalue_witness(s.values[idx]),
        checked_count=s.n,
        marginal=marginal,
        details={**details, "l": l},
    )


def hadamard_fischer_check(t: MinorTable, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ClassReport:
    """
    Generalized Hadamard-Fischer inequality A[a]A[b] >= A[a|b]A[a&b].

    Only pairs where neither set contains the other are checked; nested
    pairs hold with equality.

    :param t: Minor table (or target values viewed as one).
    :param cfg: Tolerances.
    :return : ClassReport.
    :return: Margin = smallest difference, witness = its pair.
    """
    n = t.n
    size = 1 << n
    if size * size // 2 > HF_PAIR_GUARD:
        raise InfeasibleEnumerationError(f"Hadamard-Fischer check at n={n} exceeds the pair guard {HF_PAIR_GUARD}")
    v = t.values
    scale = (1.0 + float(np.max(np.abs(v)))) ** 2
    best_margin, best_pair, checked = INF, None, 0
    all_masks = np.arange(size)
    for a in range(1, size):
        b = all_masks[a + 1:]
        b = b[((a & ~b) != 0) & ((b & ~a) != 0)]
        if b.size == 0:
            continue
        diff = v[a] * v[b] - v[a | b] * v[a & b]
        checked += b.size
        j = int(np.argmin(diff))
        if diff[j] < best_margin:
            best_margin, best_pair = float(diff[j]), (a, int(b[j]))
    verdict, marginal = cfg.judge(best_margin, scale=scale)
    witness = None
    if best_pair is not None:
        a, b = best_pair
        witness = dict(
            pair_witness(IndexSet(a, n), IndexSet(b, n), kind="hf-pair"),
            lhs=float(v[a] * v[b]),
            rhs=float(v[a | b] * v[a & b]),
        )
    return ClassReport(
        name="hf",
        verdict=verdict,
        margin=best_margin,
        witness=witness,
        checked_count=checked,
        marginal=marginal,
        details={"scale": scale},
    )


def newton_check(c: Sequence[float], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ClassReport:
    """
    Newton's inequalities c_j^2 >= c_{j-1} c_{j+1}, j = 1..n-1.

    :param c: Mean minor sums c_0..c_n with c_0 = 1.
    :param cfg: Tolerances.
    :return : ClassReport.
    :return: Margin = smallest slack, witness = its index j.
    """
    c = np.asarray(c, dtype=float)
    if c.size == 0 or c[0] != 1.0:
        raise InputError("Newton aggregates must start with c_0 = 1")
    n = c.size - 1
    scale = max(1.0, float(np.max(c**2)))
    if n < 2:
        return ClassReport(name="newton", verdict=PASS, margin=INF, checked_count=0, details={"scale": scale})
    slack = c[1:-1] ** 2 - c[:-2] * c[2:]
    idx = int(np.argmin(slack))
    margin = float(slack[idx])
    verdict, marginal = cfg.judge(margin, scale=scale)
    return ClassReport(
        name="newton",
        verdict=verdict,
        margin=margin,
        witness={"kind": "index", "j": idx + 1, "c": [float(x) for x in c[idx:idx + 3]]},
        checked_count=n - 1,
        marginal=marginal,
        details={"scale": scale},
    )


def z_matrix_check(A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ClassReport:
    """
    Z-matrix test: every off-diagonal entry is nonpositive.

    :param A: Matrix.
    :param cfg: Tolerances.
    :return : ClassReport.
    :return: Margin = minus the largest off-diagonal entry.
    """
    n = A.n
    if n == 1:
        return ClassReport(name="z", verdict=PASS, margin=INF, checked_count=0)
    off = A.entries.copy()
    np.fill_diagonal(off, -np.inf)
    i, j = np.unravel_index(int(np.argmax(off)), off.shape)
    margin = -float(off[i, j])
    verdict, marginal = cfg.judge(margin)
    return ClassReport(
        name="z",
        verdict=verdict,
        margin=margin,
        witness={"kind": "entry", "row": int(i) + 1, "col": int(j) + 1, "value": float(off[i, j])},
        checked_count=n * (n - 1),
        marginal=marginal,
    )


def m_matrix_check(A: Matrix, t: MinorTable, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ClassReport:
    """
    Nonsingular M-matrix: a Z-matrix that is a P-matrix.

    :param A: Matrix.
    :param t: Minor table of A.
    :param cfg: Tolerances.
    :return : ClassReport.
    :return: Conjunction of the Z and P tests.
    """
    return combine_reports("m", [z_matrix_check(A, cfg), p_matrix_check(t, cfg)])


def real_spectrum_check(s: Spectrum, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ClassReport:
    """
    Every eigenvalue is real within tol_real.

    :param s: Spectrum.
    :param cfg: Tolerances.
    :return : ClassReport.
    :return: Margin = minus the largest scaled imaginary part.
    """
    ratios = np.abs(s.values.imag) / (1.0 + np.abs(s.values))
    idx = int(np.argmax(ratios))
    margin = cfg.tol_real - float(ratios[idx])
    verdict: Verdict = PASS if margin >= 0 else FAIL
    return ClassReport(
        name="real-spectrum",
        verdict=verdict,
        margin=margin,
        witness=eigenvalue_witness(s.values[idx]),
        checked_count=s.n,
    )
