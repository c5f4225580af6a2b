"""Graph products (cartesian, weak, lexicographic, generalized lexicographic)
and the arithmetic sufficiency checks for state transfer on them.

Vertex (g, h) of a product sits at index g*|V_H| + h, matching the
left-operand-first convention used by join.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import InvalidSizeError, NonCommutingError
from .graphs import Graph, regular_degree
from .spectral import is_integral, spectrum

__all__ = [
    "ConditionReport",
    "cartesian_product",
    "weak_product",
    "lexicographic_product",
    "generalized_lexicographic_product",
    "generalized_lexicographic_spectrum",
    "is_circulant_adjacency",
    "check_weak_pst_condition",
    "check_lexico_clique_condition",
    "check_std_lexico_condition",
]

MEMBERSHIP_RTOL = 1e-9
ODD_INT_TOL = 1e-8


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of an arithmetic sufficiency check.

    holds is True only when every membership test passed; witness carries the
    checked quantities so callers (and tests) can audit the decision.
    """

    holds: bool
    witness: Dict[str, Any]
    detail: str

    def __bool__(self) -> bool:
        return self.holds


def _product_labels(g: Graph, h: Graph) -> Optional[Tuple[str, ...]]:
    if g.labels is None or h.labels is None:
        return None
    return tuple(f"({lg},{lh})" for lg in g.labels for lh in h.labels)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    adj = np.kron(g.adj, np.eye(h.n)) + np.kron(np.eye(g.n), h.adj)
    return Graph(adj, labels=_product_labels(g, h))


def weak_product(g: Graph, h: Graph) -> Graph:
    return Graph(np.kron(g.adj, h.adj), labels=_product_labels(g, h))


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    adj = np.kron(g.adj, np.ones((h.n, h.n))) + np.kron(np.eye(g.n), h.adj)
    return Graph(adj, labels=_product_labels(g, h))


def generalized_lexicographic_product(g: Graph, c: Graph, h: Graph) -> Graph:
    """Adjacency A_G (x) A_C + I (x) A_H; C prescribes the connection pattern
    between copies of H, so it must have the same order as H."""
    if c.n != h.n:
        raise InvalidSizeError(
            f"connection graph has {c.n} vertices but inner graph has {h.n}"
        )
    adj = np.kron(g.adj, c.adj) + np.kron(np.eye(g.n), h.adj)
    return Graph(adj, labels=_product_labels(g, h))


def _commuting_eigenpairs(h: Graph, c: Graph) -> List[Tuple[float, float]]:
    """Joint eigenvalues (mu_l, gamma_l) of commuting symmetric A_H, A_C."""
    comm = h.adj @ c.adj - c.adj @ h.adj
    scale = 1.0 + float(np.max(np.abs(h.adj))) * float(np.max(np.abs(c.adj)))
    if np.max(np.abs(comm)) > 1e-10 * h.n * scale:
        raise NonCommutingError("inner and connection adjacencies do not commute")
    w, v = np.linalg.eigh(h.adj)
    tol = 1e-8 * max(1.0, float(np.max(np.abs(w))))
    pairs: List[Tuple[float, float]] = []
    start = 0
    for k in range(1, h.n + 1):
        if k == h.n or w[k] - w[k - 1] > tol:
            block = v[:, start:k]
            sub = block.T @ c.adj @ block
            gam = np.linalg.eigvalsh(sub)
            mu = float(np.mean(w[start:k]))
            pairs.extend((mu, float(x)) for x in gam)
            start = k
    return pairs


def generalized_lexicographic_spectrum(g: Graph, c: Graph, h: Graph) -> np.ndarray:
    """Spectrum {lambda_k * gamma_l + mu_l} via a common eigenbasis of H and C.

    Requires [A_H, A_C] = 0; raises NonCommutingError otherwise.
    """
    if c.n != h.n:
        raise InvalidSizeError(
            f"connection graph has {c.n} vertices but inner graph has {h.n}"
        )
    pairs = _commuting_eigenpairs(h, c)
    lam = spectrum(g)
    vals = [lk * gamma + mu for lk in lam for (mu, gamma) in pairs]
    return np.sort(np.asarray(vals))[::-1]


def is_circulant_adjacency(g: Graph) -> bool:
    """True when A[j,k] equals A[0][(k-j) mod n] exactly, with 0/1 entries and
    a zero diagonal — a literal circulant pattern, not an isomorphism test."""
    a = g.adj
    n = g.n
    row0 = a[0]
    if row0[0] != 0.0:
        return False
    if not np.all((a == 0.0) | (a == 1.0)):
        return False
    for j in range(1, n):
        if not np.array_equal(a[j], np.roll(row0, j)):
            return False
    return True


def _near_multiple(x: float, base: float) -> Tuple[bool, float]:
    """Is x within 1e-9*(1+|x|) of an integer multiple of base? Returns the
    verdict and the signed residual."""
    k = round(x / base)
    res = x - k * base
    return abs(res) <= MEMBERSHIP_RTOL * (1.0 + abs(x)), res


def check_weak_pst_condition(g: Graph, t_g: float, h: Graph) -> ConditionReport:
    """Sufficiency test for transfer on the weak product G x H at time t_g.

    Needs (i) t_g * Spec(G) inside Z*pi and (ii) H a circulant graph whose
    eigenvalues are all odd integers. Sufficient, not necessary.
    """
    lam = spectrum(g)
    residuals = []
    spec_ok = True
    for lk in lam:
        ok, res = _near_multiple(t_g * float(lk), pi)
        residuals.append(res)
        spec_ok = spec_ok and ok
    circ = is_circulant_adjacency(h)
    mu = spectrum(h)
    mu_rounded = np.round(mu)
    odd_ok = bool(
        np.all(np.abs(mu - mu_rounded) <= ODD_INT_TOL)
        and np.all(mu_rounded.astype(int) % 2 == 1)
    )
    holds = spec_ok and circ and odd_ok
    problems = []
    if not spec_ok:
        problems.append("t*Spec(G) leaves Z*pi")
    if not circ:
        problems.append("inner graph is not circulant")
    if not odd_ok:
        problems.append("inner spectrum is not all odd integers")
    detail = "all conditions hold" if holds else "; ".join(problems)
    witness = {
        "t_spec_mod_pi": residuals,
        "h_circulant": circ,
        "h_spectrum": [float(x) for x in mu],
    }
    return ConditionReport(holds, witness, detail)


def check_lexico_clique_condition(
    g: Graph, h: Graph, t: float, m: Optional[int] = None
) -> ConditionReport:
    """Sufficiency test for transfer on G_{K_m}[H] when G and H both have
    transfer at the common time t: H must be m-vertex regular and
    t*m*Spec(G) must lie in 2*Z*pi.
    """
    if m is None:
        m = h.n
    size_ok = h.n == m
    reg = regular_degree(h)
    lam = spectrum(g)
    residuals = []
    spec_ok = True
    for lk in lam:
        ok, res = _near_multiple(t * m * float(lk), 2.0 * pi)
        residuals.append(res)
        spec_ok = spec_ok and ok
    holds = size_ok and reg is not None and spec_ok
    problems = []
    if not size_ok:
        problems.append(f"inner graph has {h.n} vertices, expected {m}")
    if reg is None:
        problems.append("inner graph is not regular")
    if not spec_ok:
        problems.append("t*m*Spec(G) leaves 2*Z*pi")
    detail = "all conditions hold" if holds else "; ".join(problems)
    witness = {
        "t_m_spec_mod_2pi": residuals,
        "h_regular_degree": reg,
        "clique_order": m,
    }
    return ConditionReport(holds, witness, detail)


def check_std_lexico_condition(g: Graph, h: Graph, t_h: float) -> ConditionReport:
    """Sufficiency test for transfer on the standard lexicographic G[H] at the
    inner graph's transfer time t_h: H regular and t_h*|V_H|*Spec(G) in 2*Z*pi.

    witness["integer_form"] additionally reports the all-integer variant
    k_H*|V_H|*Spec(G) in 4*Z when G is integral and t_h = (pi/2)*k_H;
    it is None when that variant does not apply.
    """
    reg = regular_degree(h)
    lam = spectrum(g)
    residuals = []
    spec_ok = True
    for lk in lam:
        ok, res = _near_multiple(t_h * h.n * float(lk), 2.0 * pi)
        residuals.append(res)
        spec_ok = spec_ok and ok
    holds = reg is not None and spec_ok
    integer_form: Optional[bool] = None
    if reg is not None and is_integral(g):
        k_h = round(reg)
        if abs(reg - k_h) <= 1e-9 and abs(t_h - 0.5 * pi * k_h) <= MEMBERSHIP_RTOL * (
            1.0 + abs(t_h)
        ):
            integer_form = all(
                (k_h * h.n * round(float(lk))) % 4 == 0 for lk in lam
            )
    problems = []
    if reg is None:
        problems.append("inner graph is not regular")
    if not spec_ok:
        problems.append("t_H*|V_H|*Spec(G) leaves 2*Z*pi")
    detail = "all conditions hold" if holds else "; ".join(problems)
    witness = {
        "t_n_spec_mod_2pi": residuals,
        "h_regular_degree": reg,
        "integer_form": integer_form,
    }
    return ConditionReport(holds, witness, detail)
