"""Transfer-quality analysis: fidelity series, maximum-fidelity scans,
strong cospectrality, exact perfect-transfer certificates, and the bundled
results table.

The certificate machinery decides perfect state transfer exactly whenever
the supported eigenvalues reduce to a common real scale times integers:
strong cospectrality supplies a sign per eigenvalue cluster, and transfer
exists iff some rational multiple of pi aligns every cluster's phase with
its sign. Spectra that admit no such scale get verdict "unknown" (never a
guessed answer) plus advice to scan numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, pi, sqrt
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .cones import (
    cylindrical_cone,
    cylindrical_no_pst_check,
    double_cone,
    double_cone_pst_condition,
    glued_cone_pst_condition,
    glued_double_cone,
)
from .errors import InvalidArgumentError
from .graphs import Graph, circulant, complete, empty_graph, hypercube, path_graph, scale
from .products import lexicographic_product, weak_product
from .rationals import minimal_phase_alignment, rational_reconstruct
from .spectral import (
    SpectralProjectors,
    eigendecompose,
    fidelity,
    spectral_projectors,
)

__all__ = [
    "FidelitySeries",
    "PstCertificate",
    "TableRow",
    "fidelity_series",
    "max_fidelity_scan",
    "fidelity_band",
    "strong_cospectrality",
    "pst_certificate",
    "pst_table",
]

SCAN_CHUNK = 20000
NUMERIC_PST = 1.0 - 1e-8
PRETTY_GOOD = 1.0 - 1e-3


@dataclass(frozen=True)
class FidelitySeries:
    """Sampled transfer amplitudes <target| exp(-itA) |source>."""

    times: np.ndarray
    amplitudes: np.ndarray
    source: int
    target: int

    def to_csv(self) -> str:
        lines = ["t,re,im,abs"]
        for t, amp in zip(self.times, self.amplitudes):
            lines.append(
                f"{t:.17g},{amp.real:.17g},{amp.imag:.17g},{abs(amp):.17g}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PstCertificate:
    """Exact yes/no/unknown answer for perfect transfer between two vertices.

    time_exact packs the transfer time as (a, b, scale) meaning
    t* = (a/b) * pi * scale, with scale = 1.0 whenever the eigenvalue scale
    itself is rational.
    """

    verdict: str
    time_num: Optional[float]
    time_exact: Optional[Tuple[int, int, float]]
    support: Tuple[int, ...]
    signs: Tuple[int, ...]
    reason: str


def fidelity_series(g: Graph, a: int, b: int, t_max: float, steps: int) -> FidelitySeries:
    g.check_vertex(a)
    g.check_vertex(b)
    if steps < 2:
        raise InvalidArgumentError("steps must be at least 2")
    if not t_max > 0:
        raise InvalidArgumentError("t_max must be positive")
    dec = eigendecompose(g)
    times = np.linspace(0.0, t_max, steps)
    amps = fidelity(dec, a, b, times)
    return FidelitySeries(times, np.asarray(amps), a, b)


def _golden_max(fn: Callable[[float], float], lo: float, hi: float, iters: int) -> Tuple[float, float]:
    invphi = (sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
        else:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
    return (c, fc) if fc >= fd else (d, fd)


def max_fidelity_scan(
    g: Graph, a: int, b: int, t_max: float, steps: int, refine_iters: int = 60
) -> Tuple[float, float]:
    """Grid maximum of |F| over [0, t_max] followed by golden-section
    refinement around the best grid point. Returns (t_star, fmax)."""
    g.check_vertex(a)
    g.check_vertex(b)
    if steps < 2:
        raise InvalidArgumentError("steps must be at least 2")
    if not t_max > 0:
        raise InvalidArgumentError("t_max must be positive")
    dec = eigendecompose(g)
    w_ab = dec.vectors[b, :] * dec.vectors[a, :]
    times = np.linspace(0.0, t_max, steps)
    best_t, best_f = 0.0, -1.0
    for start in range(0, steps, SCAN_CHUNK):
        sub = times[start : start + SCAN_CHUNK]
        vals = np.abs(w_ab @ np.exp(-1j * np.outer(dec.values, sub)))
        k = int(np.argmax(vals))
        if vals[k] > best_f:
            best_f = float(vals[k])
            best_t = float(sub[k])
    if refine_iters > 0:
        h = times[1] - times[0]
        lo = max(0.0, best_t - h)
        hi = min(t_max, best_t + h)
        t_ref, f_ref = _golden_max(
            lambda t: abs(fidelity(dec, a, b, t)), lo, hi, refine_iters
        )
        if f_ref > best_f:
            best_t, best_f = t_ref, f_ref
    return best_t, best_f


def fidelity_band(fmax: float) -> str:
    """Interpretation band for a scanned maximum fidelity."""
    if fmax >= NUMERIC_PST:
        return "numeric PST"
    if fmax > PRETTY_GOOD:
        return "inconclusive (possible pretty-good transfer)"
    return "no numeric PST"


# ---------------------------------------------------------------------------
# strong cospectrality and certificates
# ---------------------------------------------------------------------------

def _cospectral_signs(
    projs: SpectralProjectors, a: int, b: int, tol: float
) -> Tuple[Tuple[int, ...], Tuple[int, ...], Optional[int]]:
    """Per-cluster projections of |a> and |b>: returns (supported cluster
    indices, sign per supported cluster, index of a failing cluster or None).
    Sign 0 means E|a> = E|b>, sign 1 means E|a> = -E|b>."""
    supported: List[int] = []
    signs: List[int] = []
    for j, p in enumerate(projs.projectors):
        va = p[:, a]
        vb = p[:, b]
        if np.linalg.norm(va) <= tol and np.linalg.norm(vb) <= tol:
            continue
        if np.max(np.abs(va - vb)) <= tol:
            sig = 0
        elif np.max(np.abs(va + vb)) <= tol:
            sig = 1
        else:
            return tuple(supported), tuple(signs), j
        supported.append(j)
        signs.append(sig)
    return tuple(supported), tuple(signs), None


def strong_cospectrality(
    g: Graph, a: int, b: int, tol: float = 1e-8
) -> Optional[Tuple[int, ...]]:
    """Sign vector over supported eigenvalue clusters if every cluster
    projects |a> onto +-|b>'s projection; None otherwise. A necessary
    condition for perfect transfer between a and b."""
    g.check_vertex(a)
    g.check_vertex(b)
    projs = spectral_projectors(eigendecompose(g))
    _, signs, bad = _cospectral_signs(projs, a, b, tol)
    return None if bad is not None else signs


def _approx_gcd(values: Sequence[float], tol: float) -> float:
    g = 0.0
    for v in values:
        x, y = abs(v), g
        while y > tol:
            x, y = y, x - floor(x / y) * y
        g = x
    return g


def pst_certificate(g: Graph, a: int, b: int) -> PstCertificate:
    """Exact transfer certificate between vertices a and b.

    Pipeline: (1) strong cospectrality — failure is a definitive no;
    (2) reduce supported eigenvalues to scale * integers, trying the smallest
    consecutive gap and then an approximate-gcd fallback — failure is
    verdict unknown; (3) solve the parity phase-alignment system on the
    integer differences — infeasibility is a definitive no; (4) confirm the
    aligned time numerically and report it exactly.
    """
    g.check_vertex(a)
    g.check_vertex(b)
    tol = 1e-8
    dec = eigendecompose(g)
    projs = spectral_projectors(dec)
    support, signs, bad = _cospectral_signs(projs, a, b, tol)
    if bad is not None:
        return PstCertificate(
            "no",
            None,
            None,
            (),
            (),
            f"not strongly cospectral: eigenvalue cluster at "
            f"{projs.values[bad]:.6g} projects the endpoints onto "
            f"non-proportional vectors",
        )
    vals = [projs.values[j] for j in support]
    if len(vals) < 2:
        return PstCertificate(
            "no",
            None,
            None,
            support,
            signs,
            "a single supported eigenvalue cluster keeps |F| constant below 1",
        )
    diffs = [v - vals[0] for v in vals[1:]]
    gap = min(vals[i] - vals[i + 1] for i in range(len(vals) - 1))
    scale_r: Optional[float] = None
    for candidate in (gap, _approx_gcd(diffs, 1e-9 * max(1.0, abs(vals[0])))):
        if candidate <= 1e-12:
            continue
        reduced = [d / candidate for d in diffs]
        if all(abs(x - round(x)) <= 1e-7 for x in reduced):
            scale_r = candidate
            break
    if scale_r is None:
        return PstCertificate(
            "unknown",
            None,
            None,
            support,
            signs,
            "supported eigenvalues do not reduce to a common scale times "
            "integers; exact analysis unavailable (use max_fidelity_scan for "
            "numeric evidence)",
        )
    deltas = [round(d / scale_r) for d in diffs]
    parities = [s ^ signs[0] for s in signs[1:]]
    tau = minimal_phase_alignment(deltas, parities)
    if tau is None:
        return PstCertificate(
            "no",
            None,
            None,
            support,
            signs,
            f"phase alignment infeasible: integer eigenvalue differences "
            f"{deltas} (scale {scale_r:.6g}) cannot realize the sign pattern "
            f"{list(parities)} at any time",
        )
    t_star = float(tau) * pi / scale_r
    confirm = abs(fidelity(dec, a, b, t_star))
    if confirm < 1.0 - 1e-8:
        return PstCertificate(
            "unknown",
            None,
            None,
            support,
            signs,
            f"alignment suggested t = {t_star:.9g} but numeric fidelity there "
            f"is only {confirm:.9f}",
        )
    rec = rational_reconstruct(1.0 / scale_r)
    if rec is not None:
        frac = tau * Fraction(*rec)
        time_exact = (frac.numerator, frac.denominator, 1.0)
    else:
        time_exact = (tau.numerator, tau.denominator, 1.0 / scale_r)
    return PstCertificate(
        "yes",
        t_star,
        time_exact,
        support,
        signs,
        f"strongly cospectral with integer differences {deltas} at scale "
        f"{scale_r:.6g}; minimal alignment tau = {tau}; numeric |F(t*)| = "
        f"{confirm:.12f}",
    )


# ---------------------------------------------------------------------------
# bundled results table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    name: str
    expected: str
    observed: str
    matches: bool
    time_num: Optional[float]
    note: str


def _scan_verdict(g: Graph, a: int, b: int) -> Tuple[str, Optional[float], str]:
    t_s, fmax = max_fidelity_scan(g, a, b, 200.0, 200001, 60)
    band = fidelity_band(fmax)
    if fmax >= NUMERIC_PST:
        return "yes", t_s, f"scan max |F| = {fmax:.8f} at t = {t_s:.6f}"
    return "no", None, f"scan max |F| = {fmax:.6f} ({band}); PST not detected"


def _cert_verdict(g: Graph, a: int, b: int) -> Tuple[str, Optional[float], str]:
    cert = pst_certificate(g, a, b)
    if cert.verdict == "yes":
        return "yes", cert.time_num, f"certificate yes at t = {cert.time_num:.9g}"
    if cert.verdict == "no":
        return "no", None, "certificate no"
    verdict, t, note = _scan_verdict(g, a, b)
    return verdict, t, f"certificate unknown; {note}"


def pst_table() -> List[TableRow]:
    """Eight bundled instances, one per family, with expected transfer
    verdicts. A row matches when the observed verdict (exact certificate or
    condition where available, numeric scan otherwise) equals the expected
    one."""
    rows: List[TableRow] = []

    # 1. weighted double cone over sqrt(2)-scaled K3
    cond = double_cone_pst_condition(2.0 * sqrt(2.0), 0, sqrt(3.0))
    g = double_cone(scale(complete(3), sqrt(2.0)), 0, sqrt(3.0))
    t1 = cond.witness["time"]
    f1 = abs(fidelity(eigendecompose(g), 0, 1, t1)) if t1 is not None else 0.0
    ok1 = cond.holds and f1 >= NUMERIC_PST
    rows.append(
        TableRow(
            "double cone over sqrt2*K3 (alpha = sqrt3)",
            "yes",
            "yes" if ok1 else "no",
            ok1,
            t1,
            f"condition {'holds' if cond.holds else 'fails'}, |F(t*)| = {f1:.10f}",
        )
    )

    # 2. path P5
    verdict, t2, note = _cert_verdict(path_graph((1.0, 1.0, 1.0, 1.0)), 0, 4)
    rows.append(TableRow("path P5", "no", verdict, verdict == "no", t2, note))

    # 3. glued circulant cones (15, 6, 8)
    cond3 = glued_cone_pst_condition(15, 6, 8)
    half = circulant(15, (1, 2, 4))
    g3 = glued_double_cone(half, half, circulant(15, (1, 2, 4, 7)))
    t3 = cond3.witness["time"]
    f3 = abs(fidelity(eigendecompose(g3), 0, g3.n - 1, t3)) if t3 is not None else 0.0
    ok3 = cond3.holds and f3 >= NUMERIC_PST
    rows.append(
        TableRow(
            "glued circulant cones (n,k,gamma) = (15,6,8)",
            "yes",
            "yes" if ok3 else "no",
            ok3,
            t3,
            f"condition {'holds' if cond3.holds else 'fails'}, |F(t*)| = {f3:.10f}",
        )
    )

    # 4. K1 + K3 + K3 + K1 (fully joined copies)
    g4 = glued_double_cone(complete(3), complete(3), np.ones((3, 3)))
    verdict4, t4, note4 = _scan_verdict(g4, 0, g4.n - 1)
    rows.append(
        TableRow("half-join K1+K3+K3+K1", "no", verdict4, verdict4 == "no", t4, note4)
    )

    # 5. cylindrical cone (3, 2, 2)
    check5 = cylindrical_no_pst_check(3, 2, 2)
    g5 = cylindrical_cone(complete(3), empty_graph(2), complete(3))
    verdict5, t5, note5 = _scan_verdict(g5, 0, g5.n - 1)
    obs5 = "no" if (check5.verdict == "no" and verdict5 == "no") else "yes"
    rows.append(
        TableRow(
            "cylindrical cone (n,k,m) = (3,2,2)",
            "no",
            obs5,
            obs5 == "no",
            None,
            f"parity contradiction recorded; {note5}",
        )
    )

    # 6. hypercube Q4 between antipodes
    verdict6, t6, note6 = _cert_verdict(hypercube(4), 0, 15)
    rows.append(TableRow("hypercube Q4", "yes", verdict6, verdict6 == "yes", t6, note6))

    # 7. weak product Q2 x K4 between (0,0) and (antipode,0)
    g7 = weak_product(hypercube(2), complete(4))
    verdict7, t7, note7 = _cert_verdict(g7, 0, 12)
    rows.append(
        TableRow("weak product Q2 x K4", "yes", verdict7, verdict7 == "yes", t7, note7)
    )

    # 8. lexicographic K2[Q2] within one fiber
    g8 = lexicographic_product(complete(2), hypercube(2))
    verdict8, t8, note8 = _cert_verdict(g8, 0, 3)
    rows.append(
        TableRow(
            "lexicographic K2[Q2]", "yes", verdict8, verdict8 == "yes", t8, note8
        )
    )

    return rows
