"""Adjacency spectra, spectral gaps, Ramanujan checks and the X_k / T_k correspondence."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .graphs.core import LabeledGraph

DENSE_CAP = 2048
RESIDUAL_TOL = 1e-8


class SizeCapExceeded(RuntimeError):
    pass


class NotConverged(RuntimeError):
    pass


class SquaringMismatch(AssertionError):
    def __init__(self, entry, expected, got):
        super().__init__(f"(A_T^2 - 3I)[{entry[0]}, {entry[1]}] = {got}, but A_X has {expected}")
        self.entry, self.expected, self.got = entry, expected, got


def adjacency(g: LabeledGraph, dtype=np.float64) -> sp.csr_matrix:
    return g.adjacency(dtype)


def degree(g: LabeledGraph) -> int:
    deg = g.degrees()
    if deg.min() != deg.max():
        raise ValueError("graph is not regular")
    return int(deg[0])


def check_symmetric(A, rng: np.random.Generator, probes: int = 3, tol: float = 1e-12) -> bool:
    n = A.shape[0]
    for _ in range(probes):
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        a, b = (A @ x) @ y, x @ (A @ y)
        if abs(a - b) > tol * max(1.0, abs(a)):
            return False
    return True


# dense path --------------------------------------------------------------

def dense_eigh(g: LabeledGraph, cap: int = DENSE_CAP) -> tuple[np.ndarray, np.ndarray]:
    """All eigenpairs, ascending, each checked to residual <= 1e-8 d."""
    if g.nverts > cap:
        raise SizeCapExceeded(f"{g.nverts} vertices exceeds the dense cap {cap}")
    A = adjacency(g).toarray()
    w, V = np.linalg.eigh(A)
    d = max(1.0, float(g.degrees().max()))
    res = np.linalg.norm(A @ V - V * w, axis=0)
    if res.max() > RESIDUAL_TOL * d:
        raise NotConverged(f"dense residual {res.max():.3e} above {RESIDUAL_TOL * d:.1e}")
    return w, V


def dense_spectrum(g: LabeledGraph, cap: int = DENSE_CAP) -> np.ndarray:
    return dense_eigh(g, cap)[0]


# iterative path ----------------------------------------------------------

@dataclass
class LanczosResult:
    lambda_max: float
    lambda_min: float
    vec_max: np.ndarray = field(repr=False)
    vec_min: np.ndarray = field(repr=False)
    residual_max: float
    residual_min: float
    iterations: int


def _orthonormal(vectors: Sequence[np.ndarray], n: int) -> np.ndarray:
    if not vectors:
        return np.zeros((0, n))
    Q, R = np.linalg.qr(np.stack([np.asarray(v, dtype=float) for v in vectors], axis=1))
    keep = np.abs(np.diag(R)) > 1e-12
    return Q[:, keep].T


def extreme_eigenvalues(A, deflate: Sequence[np.ndarray] = (), seed: int = 0, tol: float = RESIDUAL_TOL,
                        maxiter: Optional[int] = None, check_every: int = 10) -> LanczosResult:
    """Largest and smallest eigenvalue of A on the complement of ``deflate``.

    Lanczos with full reorthogonalisation (two passes of classical
    Gram-Schmidt) against both the deflation space and the Krylov basis.
    Converged when both extreme Ritz pairs have true residual <= tol; raises
    NotConverged otherwise.
    """
    n = A.shape[0]
    Q0 = _orthonormal(list(deflate), n)
    free = n - len(Q0)
    if free < 1:
        raise ValueError("deflation space fills the whole space")
    m_cap = min(free, maxiter or 1500)
    rng = np.random.default_rng(seed)

    def project(x):
        for _ in range(2):
            if len(Q0):
                x = x - Q0.T @ (Q0 @ x)
        return x

    v = project(rng.standard_normal(n))
    v /= np.linalg.norm(v)
    V = np.empty((m_cap, n))
    alpha = np.empty(m_cap)
    beta = np.empty(m_cap)
    prev_beta, prev = 0.0, np.zeros(n)
    for j in range(m_cap):
        V[j] = v
        w = A @ v
        alpha[j] = w @ v
        w = w - alpha[j] * v - prev_beta * prev
        w = project(w)
        for _ in range(2):
            w -= V[: j + 1].T @ (V[: j + 1] @ w)
        beta[j] = np.linalg.norm(w)
        m = j + 1
        done = beta[j] < 1e-12 or m == m_cap
        if not done and (m < 2 or m % check_every):
            prev_beta, prev, v = beta[j], v, w / beta[j]
            continue
        theta, S = sla.eigh_tridiagonal(alpha[:m], beta[: m - 1])
        est = beta[j] * np.abs(S[-1, [-1, 0]])
        if done or np.all(est <= tol / 10):
            ys = V[:m].T @ S[:, [-1, 0]]
            ys /= np.linalg.norm(ys, axis=0)
            ys = np.stack([project(ys[:, 0]), project(ys[:, 1])], axis=1)
            AY = A @ ys
            th = np.einsum("ij,ij->j", ys, AY)
            res = np.linalg.norm(AY - ys * th, axis=0)
            if np.all(res <= tol):
                return LanczosResult(float(th[0]), float(th[1]), ys[:, 0], ys[:, 1],
                                     float(res[0]), float(res[1]), m)
            if done:
                raise NotConverged(f"Lanczos stopped after {m} steps with residuals {res}")
        prev_beta, prev, v = beta[j], v, w / beta[j]
    raise NotConverged(f"no convergence in {m_cap} steps")


def trivial_vectors(g: LabeledGraph) -> list[np.ndarray]:
    """All-ones, plus the bipartite sign vector when the graph is bipartite."""
    out = [np.ones(g.nverts)]
    cls = g.classes if g.classes is not None else g.bipartition()
    if cls is not None:
        out.append(1.0 - 2.0 * np.asarray(cls, dtype=float))
    return out


def rayleigh_gap(g: LabeledGraph, F: np.ndarray) -> float:
    """Sum over edges of (F(v) - F(w))^2 divided by sum of F(v)^2, for mean-zero F."""
    e = g.edges()
    return float(np.sum((F[e[:, 0]] - F[e[:, 1]]) ** 2) / np.sum(F ** 2))


# verdicts and reports ----------------------------------------------------

def nontrivial(spec: np.ndarray, d: float, tol: float = 1e-9) -> np.ndarray:
    spec = np.asarray(spec)
    return spec[(np.abs(spec - d) > tol) & (np.abs(spec + d) > tol)]


def ramanujan(spec: Sequence[float], d: int, slack: float = 1e-9) -> bool:
    """Every eigenvalue other than +-d lies in [-2 sqrt(d-1), 2 sqrt(d-1)]."""
    bound = 2 * math.sqrt(d - 1) + slack
    rest = nontrivial(np.asarray(spec, dtype=float), d)
    return bool(np.all(np.abs(rest) <= bound))


def lambda1(spec: np.ndarray, d: float, tol: float = 1e-9) -> float:
    """Largest eigenvalue below d."""
    below = np.asarray(spec)[np.asarray(spec) < d - tol]
    return float(below.max())


@dataclass
class SpectrumReport:
    graph: str
    n: int
    d: int
    lambda1: float
    lambda_min: float
    sigma: float
    ramanujan: bool
    method: str
    residual: float
    rayleigh: Optional[float] = None
    spectrum: Optional[list] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1, sort_keys=True)


def spectrum_report(g: LabeledGraph, dense_cap: int = DENSE_CAP, seed: int = 0,
                    keep_spectrum: bool = False) -> SpectrumReport:
    """lambda_1 (largest eigenvalue below d), the gap d - lambda_1, Ramanujan verdict.

    Dense when the graph is small enough, Lanczos otherwise.  For bipartite
    graphs the iterative verdict uses the symmetry of the spectrum.
    """
    d = degree(g)
    if g.nverts <= dense_cap:
        w, V = dense_eigh(g, dense_cap)
        l1 = lambda1(w, d)
        i = int(np.argmin(np.abs(w - l1)))
        F = V[:, i]
        rest = nontrivial(w, d)
        res = float(np.linalg.norm(adjacency(g) @ F - l1 * F))
        return SpectrumReport(g.name, g.nverts, d, l1, float(rest.min()), d - l1, ramanujan(w, d), "dense",
                              res, rayleigh=rayleigh_gap(g, F), spectrum=w.tolist() if keep_spectrum else None)
    A = adjacency(g)
    lr = extreme_eigenvalues(A, trivial_vectors(g), seed=seed)
    bound = 2 * math.sqrt(d - 1) + 1e-9
    ram = abs(lr.lambda_max) <= bound and abs(lr.lambda_min) <= bound
    return SpectrumReport(g.name, g.nverts, d, lr.lambda_max, lr.lambda_min, d - lr.lambda_max, bool(ram),
                          "lanczos", max(lr.residual_max, lr.residual_min), rayleigh=rayleigh_gap(g, lr.vec_max))


def spectral_gap(T: LabeledGraph, dense_cap: int = DENSE_CAP, seed: int = 0) -> float:
    """sigma = 3 - lambda_1, cross-checked against the Rayleigh quotient of the eigenvector."""
    if degree(T) != 3 or not T.is_connected():
        raise ValueError("spectral_gap expects a connected trivalent graph")
    r = spectrum_report(T, dense_cap, seed)
    if abs(r.rayleigh - r.sigma) > 1e-7:
        raise ArithmeticError(f"Rayleigh quotient {r.rayleigh} disagrees with gap {r.sigma}")
    return r.sigma


# X_k versus T_k ----------------------------------------------------------

@dataclass
class SquaringResult:
    ok: bool
    witness: Optional[tuple[int, int]] = None
    expected: Optional[int] = None
    got: Optional[int] = None


def verify_squaring_identity(X: LabeledGraph, T: LabeledGraph, strict: bool = True) -> SquaringResult:
    """Exact check of (A_T^2 - 3I) restricted to the old vertices against A_X.

    The old vertices of T are 0..n-1 with the numbering of X.
    """
    n = X.nverts
    AT = adjacency(T, np.int64)
    sq = (AT @ AT)[:n, :n] - 3 * sp.identity(n, dtype=np.int64, format="csr")
    diff = (sq - adjacency(X, np.int64)).tocoo()
    diff.eliminate_zeros()
    if diff.nnz == 0:
        return SquaringResult(True)
    order = np.lexsort((diff.col, diff.row))
    u, v = int(diff.row[order[0]]), int(diff.col[order[0]])
    got = int(sq[u, v])
    expected = int(adjacency(X, np.int64)[u, v])
    if strict:
        raise SquaringMismatch((u, v), expected, got)
    return SquaringResult(False, (u, v), expected, got)


def rewire_one_edge(T: LabeledGraph, seed: int = 0) -> LabeledGraph:
    """Swap the endpoints of two disjoint edges (a-b, c-d -> a-d, c-b), keeping degrees."""
    rng = np.random.default_rng(seed)
    e = T.edges()
    adj = T.adjacency_sets()
    for _ in range(1000):
        i, j = rng.choice(len(e), size=2, replace=False)
        (a, b), (c, d) = e[i], e[j]
        if len({a, b, c, d}) == 4 and d not in adj[a] and b not in adj[c]:
            e2 = e.copy()
            e2[i] = (a, d)
            e2[j] = (c, b)
            from .graphs.core import from_edges

            return from_edges(T.nverts, [tuple(x) for x in e2.tolist()], name=T.name + "~")
    raise RuntimeError("no admissible edge swap found")


def spectrum_containment(small: Sequence[float], big: Sequence[float], tol: float = 1e-8) -> bool:
    """Multiset inclusion within tol, by greedy matching of the sorted lists."""
    s = np.sort(np.asarray(small, dtype=float))
    b = np.sort(np.asarray(big, dtype=float))
    j = 0
    for x in s:
        while j < len(b) and b[j] < x - tol:
            j += 1
        if j == len(b) or b[j] > x + tol:
            return False
        j += 1
    return True


def _cluster_count(spec: np.ndarray, value: float, tol: float) -> int:
    return int(np.sum(np.abs(spec - value) <= tol))


def map_spectra(spec_X: Sequence[float], spec_T: Sequence[float], tol: float = 1e-8) -> dict:
    """Check the eigenvalue correspondence between X_k and its Delta-Y transform T_k.

    spec(T) minus {0} is {+-sqrt(mu + 3) : mu in spec(X), mu != -3} with
    multiplicity, mult_T(0) = 2 mult_X(-3), spec(X) lies in [-3, 6] and
    spec(T) is symmetric about 0.
    """
    X = np.sort(np.asarray(spec_X, dtype=float))
    T = np.sort(np.asarray(spec_T, dtype=float))
    minus3 = _cluster_count(X, -3.0, tol)
    zeros = _cluster_count(T, 0.0, tol)
    mus = X[np.abs(X + 3) > tol]
    lam = np.sqrt(np.maximum(mus + 3, 0.0))
    predicted = np.sort(np.concatenate([lam, -lam, np.zeros(2 * minus3)]))
    squared = T ** 2 - 3
    return {
        "symmetric": bool(len(T) and np.max(np.abs(T + T[::-1])) <= max(tol, 1e-9)),
        "min_X": float(X.min()),
        "min_X_ok": bool(X.min() >= -3 - tol),
        "mult_X_minus3": minus3,
        "mult_T_zero": zeros,
        "zero_bookkeeping": zeros == 2 * minus3,
        "squared_contains_X": spectrum_containment(X, squared, 1e-7),
        "pairing": bool(len(predicted) == len(T) and np.max(np.abs(predicted - T)) <= 1e-7),
    }


@dataclass
class LiftResult:
    mu: float
    kind: str                       # "pm" or "kernel"
    residual_plus: Optional[float] = None
    residual_minus: Optional[float] = None
    triangle_sums_zero: Optional[bool] = None
    kernel_residual: Optional[float] = None


def lift_eigenvector(X: LabeledGraph, T: LabeledGraph, f: np.ndarray, mu: float,
                     tol: float = 1e-8, lift_tol: float = 1e-6, shift: int = 3) -> LiftResult:
    """Lift an eigenfunction of X_k to T_k (F_+ and F_-, or the zero extension at mu = -3).

    ``shift`` is the number of triangles at each vertex of X (3 for X_k), so
    that A_X = (A_T^2 - shift I) on the old vertices.
    """
    n = X.nverts
    f = np.asarray(f, dtype=float)
    AX = adjacency(X)
    r = np.linalg.norm(AX @ f - mu * f) / np.linalg.norm(f)
    if r > tol * max(1.0, abs(mu)):
        raise ValueError(f"(f, mu) is not an eigenpair: residual {r:.3e}")
    if mu < -shift - tol:
        raise ArithmeticError(f"eigenvalue {mu} below -{shift} cannot occur; solver error")
    AT = adjacency(T)
    ext = np.concatenate([f, np.zeros(T.nverts - n)])
    sums = (AT @ ext)[n:]
    if abs(mu + shift) <= tol:
        ok = bool(np.linalg.norm(sums) <= 1e-8 * np.linalg.norm(f))
        kr = float(np.linalg.norm(AT @ ext) / np.linalg.norm(ext))
        return LiftResult(mu, "kernel", triangle_sums_zero=ok, kernel_residual=kr)
    lam = math.sqrt(mu + shift)
    out = {}
    for sign in (1, -1):
        F = np.concatenate([f, sign * sums / lam])
        out[sign] = float(np.linalg.norm(AT @ F - sign * lam * F) / np.linalg.norm(F))
    if max(out.values()) > lift_tol:
        raise ArithmeticError(f"lifted vectors have residuals {out}")
    return LiftResult(mu, "pm", out[1], out[-1])


def triangle_sum_map(X: LabeledGraph, T: LabeledGraph) -> sp.csr_matrix:
    """Rows: triangles (new vertices of T); columns: old vertices; entries 1 at corners."""
    n = X.nverts
    return adjacency(T)[n:, :n].tocsr()


def kernel_extension_check(X: LabeledGraph, T: LabeledGraph, shift: int = 3, seed: int = 0,
                           tol: float = 1e-8) -> dict:
    """Both directions of the zero-extension criterion at mu = -shift.

    Forward: every eigenvector of X at -shift has vanishing triangle sums and
    its zero extension lies in the kernel of A_T.  Backward: every function
    with vanishing triangle sums is such an eigenvector, and the two spaces
    have the same dimension.  A random function outside that space serves as
    a negative control: non-zero triangle sums, extension not in the kernel.
    """
    n = X.nverts
    w, V = dense_eigh(X)
    eig = V[:, np.abs(w + shift) <= tol]
    Bt = triangle_sum_map(X, T).toarray()
    AX, AT = adjacency(X), adjacency(T)

    def ext(f):
        return np.concatenate([f, np.zeros(T.nverts - n)])

    forward = all(np.linalg.norm(Bt @ f) <= tol and np.linalg.norm(AT @ ext(f)) <= tol for f in eig.T)
    K = sla.null_space(Bt, rcond=1e-10)
    backward = all(np.linalg.norm(AX @ f + shift * f) <= tol and np.linalg.norm(AT @ ext(f)) <= tol
                   for f in K.T)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal(n)
    if K.shape[1]:
        g -= K @ (K.T @ g)
    control = bool(np.linalg.norm(Bt @ g) > 1e-3 and np.linalg.norm(AT @ ext(g)) > 1e-3)
    return {
        "multiplicity": int(eig.shape[1]),
        "kernel_dim": int(K.shape[1]),
        "forward": bool(forward),
        "backward": bool(backward),
        "dims_agree": int(eig.shape[1]) == int(K.shape[1]),
        "negative_control": control,
    }
