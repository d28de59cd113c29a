"""Symmetric Laurent functions in the power-sum basis.

An element is a finite linear combination of monomials in the power sums
p_k(x) = sum_i x_i**k with nonzero integer k (negative k gives the Laurent
part).  The subalgebra invariant under appending a cancelling pair
(y, -y) to the variable vector is exactly the span of monomials that use
only odd k, which makes that membership a syntactic check.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

_COEFF_TOL = 0.0  # exact zero only; callers prune explicitly if needed


def _normalize_terms(terms: Mapping[Sequence[int], complex]):
    out = {}
    for gens, coeff in terms.items():
        key = tuple(sorted(int(k) for k in gens))
        for k in key:
            if k == 0:
                raise ValueError("generator index 0 is not allowed (p_0 is not a free generator)")
        c = complex(coeff)
        if c == 0:
            continue
        out[key] = out.get(key, 0.0) + c
    return tuple(sorted((k, v) for k, v in out.items() if v != 0))


@dataclass(frozen=True)
class SymLaurent:
    """A symmetric Laurent function, stored as power-sum monomials -> coefficient."""

    _terms: tuple = ()

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], complex]) -> "SymLaurent":
        return cls(_normalize_terms(terms))

    @classmethod
    def constant(cls, c: complex) -> "SymLaurent":
        return cls.from_terms({(): c})

    @classmethod
    def power_sum(cls, k: int) -> "SymLaurent":
        return cls.from_terms({(k,): 1.0})

    @classmethod
    def zero(cls) -> "SymLaurent":
        return cls(())

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "SymLaurent") -> "SymLaurent":
        merged = self.terms
        for gens, coeff in other._terms:
            merged[gens] = merged.get(gens, 0.0) + coeff
        return SymLaurent.from_terms(merged)

    def __sub__(self, other: "SymLaurent") -> "SymLaurent":
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, SymLaurent):
            prod: dict = {}
            for g1, c1 in self._terms:
                for g2, c2 in other._terms:
                    key = tuple(sorted(g1 + g2))
                    prod[key] = prod.get(key, 0.0) + c1 * c2
            return SymLaurent.from_terms(prod)
        return SymLaurent.from_terms({g: c * complex(other) for g, c in self._terms})

    __rmul__ = __mul__

    def generator_indices(self) -> set:
        return {k for gens, _ in self._terms for k in gens}

    def weight(self) -> int:
        """Largest total |k| over monomials; 0 for constants."""
        if not self._terms:
            return 0
        return max(sum(abs(k) for k in gens) for gens, _ in self._terms)

    def eval_power_sums(self, pk: Mapping[int, np.ndarray]):
        """Evaluate given precomputed arrays pk[k] of the power sums.

        Vectorized fast path used by the kernel-assembly code.
        """
        total = None
        for gens, coeff in self._terms:
            acc = coeff
            for k in gens:
                acc = acc * pk[k]
            total = acc if total is None else total + acc
        if total is None:
            return 0.0
        return total

    def to_json(self) -> str:
        blob = {
            "terms": [
                {"gens": list(gens), "re": coeff.real, "im": coeff.imag}
                for gens, coeff in self._terms
            ]
        }
        return json.dumps(blob, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SymLaurent":
        blob = json.loads(text)
        return cls.from_terms(
            {tuple(t["gens"]): complex(t["re"], t["im"]) for t in blob["terms"]}
        )


@dataclass(frozen=True)
class VariableVector:
    """Ordered nonzero scalars x_i; Laurent evaluation needs invertibility."""

    entries: tuple

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.entries)
        if any(v == 0 for v in vals):
            raise ValueError("variable vector entries must be nonzero")
        object.__setattr__(self, "entries", vals)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)


def _as_values(x) -> np.ndarray:
    if isinstance(x, VariableVector):
        return x.values
    return VariableVector(tuple(x)).values


def eval(P: SymLaurent, x) -> complex:  # noqa: A001 - matches the operation name
    """Evaluate P at the variable vector x (symmetric in the entries)."""
    vals = _as_values(x)
    needed = P.generator_indices()
    pk = {k: complex(np.sum(vals**k)) for k in needed}
    return complex(P.eval_power_sums(pk))


def is_ising_invariant(P: SymLaurent) -> bool:
    """True iff only odd power sums occur, i.e. P(y,-y,x) == P(x)."""
    return all(k % 2 != 0 for k in P.generator_indices())


def elementary_e(k: int, inverse: bool = False) -> SymLaurent:
    """The k-th elementary symmetric function in the power-sum basis.

    Newton's identities: e_k = (1/k) sum_{i=1}^{k} (-1)^(i-1) e_{k-i} p_i.
    With ``inverse`` the generators are read in the variables x_i**-1.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    es = [SymLaurent.constant(1.0)]
    sign = -1 if inverse else 1
    for j in range(1, k + 1):
        acc = SymLaurent.zero()
        for i in range(1, j + 1):
            term = es[j - i] * SymLaurent.power_sum(sign * i)
            acc = acc + ((-1.0) ** (i - 1)) * term
        es.append((1.0 / j) * acc)
    return es[k]


def elementary_sigma(k: int, x) -> complex:
    """sigma_k(x) by the stable product recursion on prod_i (1 + x_i t)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    vals = _as_values(x)
    n = len(vals)
    if k > n:
        return 0.0
    partial = np.zeros(k + 1, dtype=complex)
    partial[0] = 1.0
    for i in range(n):
        upper = min(i + 1, k)
        for j in range(upper, 0, -1):
            partial[j] += vals[i] * partial[j - 1]
    return complex(partial[k])


def _sigma_exact(k: int, xs: Sequence) -> Fraction:
    """Exact sigma_k for rational/integer entries."""
    if k < 0:
        return Fraction(0)
    if k > len(xs):
        return Fraction(0)
    partial = [Fraction(0)] * (k + 1)
    partial[0] = Fraction(1)
    for v in xs:
        fv = Fraction(v)
        for j in range(min(k, len(xs)), 0, -1):
            partial[j] += fv * partial[j - 1]
    return partial[k]


def _bareiss_det(mat):
    """Fraction-free determinant (exact for int/Fraction entries)."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _sigma_matrix_I(s: int, sigma: Callable[[int], complex]):
    """The (s+1) x (s+1) matrix whose determinant defines I_{2s+1}."""
    size = s + 1
    mat = [[None] * size for _ in range(size)]
    for i in range(s):
        for j in range(size):
            idx = 2 * (i - j) + 2
            if idx < 0:
                mat[i][j] = 0.0
            elif idx == 0:
                mat[i][j] = 1.0
            else:
                mat[i][j] = sigma(idx)
    for j in range(size):
        mat[s][j] = sigma(2 * (s - j) + 1)
    return mat


def I_eval(s: int, x, exact: bool = False):
    """The generator I_{2s+1} evaluated at x, as a determinant in the sigma_k.

    Supports s <= 8 numerically (partial-pivoting determinant); ``exact``
    switches to fraction-free arithmetic for integer/rational x.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s > 8:
        raise ValueError("s > 8 is outside the supported range")
    if exact:
        xs = list(x.entries) if isinstance(x, VariableVector) else list(x)
        mat = _sigma_matrix_I(s, lambda k: _sigma_exact(k, xs))
        mat = [[Fraction(v) if not isinstance(v, Fraction) else v for v in row] for row in mat]
        return _bareiss_det(mat)
    vals = _as_values(x)
    mat = np.array(_sigma_matrix_I(s, lambda k: elementary_sigma(k, vals)), dtype=complex)
    return complex(np.linalg.det(mat))


def J_eval(s: int, x, exact: bool = False):
    """The s x s determinant of I-values defining J_{2s+1}."""
    if s < 1:
        raise ValueError("s must be positive")
    if exact:
        xs = list(x.entries) if isinstance(x, VariableVector) else list(x)
        entries = {}
        for i in range(s):
            for j in range(s):
                idx = (4 * s - 1 - 2 * i - 2 * j - 1) // 2  # I_{2*idx+1}
                if idx not in entries:
                    entries[idx] = I_eval(idx, xs, exact=True)
        mat = [
            [entries[(4 * s - 2 - 2 * i - 2 * j) // 2] for j in range(s)]
            for i in range(s)
        ]
        return _bareiss_det(mat)
    vals = _as_values(x)
    cache = {}

    def I_at(idx: int) -> complex:
        if idx not in cache:
            cache[idx] = I_eval(idx, vals)
        return cache[idx]

    mat = np.array(
        [[I_at((4 * s - 2 - 2 * i - 2 * j) // 2) for j in range(s)] for i in range(s)],
        dtype=complex,
    )
    return complex(np.linalg.det(mat))


def partial_derivative_eval(P: SymLaurent, J: Iterable[int], zeta) -> complex:
    """Mixed first-order partials of P(e^zeta) with respect to distinct zeta_j.

    J is a set of distinct 0-based indices into zeta; each power-sum factor
    can absorb at most one derivative since p_k(e^zeta) is a sum of
    single-variable exponentials.
    """
    z = np.asarray(zeta, dtype=complex)
    J = tuple(sorted(set(int(j) for j in J)))
    for j in J:
        if j < 0 or j >= len(z):
            raise ValueError(f"derivative index {j} out of range for a {len(z)}-vector")

    pk_cache: dict = {}

    def p_val(k: int) -> complex:
        if k not in pk_cache:
            pk_cache[k] = complex(np.sum(np.exp(k * z)))
        return pk_cache[k]

    def term_partial(gens: tuple, deriv: tuple) -> complex:
        if not deriv:
            out = 1.0 + 0.0j
            for k in gens:
                out *= p_val(k)
            return out
        if not gens:
            return 0.0
        j = deriv[0]
        rest = deriv[1:]
        total = 0.0 + 0.0j
        for t, k in enumerate(gens):
            dfactor = k * np.exp(k * z[j])
            others = gens[:t] + gens[t + 1:]
            total += dfactor * term_partial(others, rest)
        return total

    out = 0.0 + 0.0j
    for gens, coeff in P._terms:
        out += coeff * term_partial(gens, J)
    return complex(out)


def odd_monomials(degree: int) -> list:
    """Monomials in positive odd power sums with total weight <= degree.

    Returned as sorted generator tuples; includes the empty (constant) one.
    """
    out = [()]

    def extend(prefix: tuple, smallest: int, budget: int):
        k = smallest
        while k <= budget:
            cur = prefix + (k,)
            out.append(cur)
            extend(cur, k, budget - k)
            k += 2
    extend((), 1, degree)
    return sorted(set(tuple(sorted(m)) for m in out))


def approximate_on_box(
    targets: Sequence[Callable[[np.ndarray], complex]],
    degree: int,
    r: float = 1.0,
    samples_per_axis: int | None = None,
    ridge: float = 1e-12,
):
    """Simultaneous least-squares fit of continuous symmetric targets.

    ``targets[j-1]`` is a function of j rapidity variables on [-r, r]^j; a
    single element built from odd power sums is fitted to all of them at once
    (evaluated at x = e^theta).  Returns (fit, sup_error) over the sample
    points.  The sample design uses a fixed per-axis grid, shrunk with the
    dimension to keep the point count moderate.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if not targets:
        raise ValueError("need at least one target function")
    monos = odd_monomials(degree)
    rows = []
    ys = []
    for j, f in enumerate(targets, start=1):
        if samples_per_axis is None:
            per_axis = max(3, int(round(12 / j)))
        else:
            per_axis = samples_per_axis
        axis = np.linspace(-r, r, per_axis)
        for point in itertools.product(axis, repeat=j):
            theta = np.array(point)
            xvals = np.exp(theta)
            pk = {k: np.sum(xvals**k) for k in range(1, degree + 1, 2)}
            rows.append([np.prod([pk[k] for k in mono]) if mono else 1.0 for mono in monos])
            ys.append(f(theta))
    A = np.array(rows, dtype=complex)
    y = np.array(ys, dtype=complex)
    n_cols = A.shape[1]
    A_aug = np.vstack([A, np.sqrt(ridge) * np.eye(n_cols)])
    y_aug = np.concatenate([y, np.zeros(n_cols)])
    coeffs, *_ = np.linalg.lstsq(A_aug, y_aug, rcond=None)
    sup_error = float(np.max(np.abs(A @ coeffs - y)))
    fit = SymLaurent.from_terms(
        {mono: c for mono, c in zip(monos, coeffs) if abs(c) > 1e-14}
    )
    return fit, sup_error


def fit_derivative_bound(
    P: SymLaurent,
    rng: np.random.Generator,
    n_max: int = 8,
    n_samples: int = 1000,
    box: float = 3.0,
):
    """Fit constants (a, b) with |partial_J P(e^zeta)| <= a^n E(Re zeta)^b.

    b is taken as the Laurent weight of P; a is the smallest constant making
    the bound hold on the sample cloud.  Returns (a, b, max_ratio) where
    max_ratio = sup |partial_J P| / (a^n E^b) <= 1 by construction.
    """
    b = max(P.weight(), 1)
    worst = 0.0
    records = []
    for _ in range(n_samples):
        n = int(rng.integers(1, n_max + 1))
        zeta = rng.uniform(-box, box, size=n)
        max_j = min(n, 4)
        size = int(rng.integers(0, max_j + 1))
        J = tuple(rng.choice(n, size=size, replace=False)) if size else ()
        d = abs(partial_derivative_eval(P, J, zeta))
        E = float(np.sum(np.cosh(zeta)))
        records.append((d, E, n))
        worst = max(worst, (d / E**b) ** (1.0 / n))
    a = max(worst, 1e-300)
    max_ratio = max(d / (a**n * E**b) for d, E, n in records) if records else 0.0
    return a, b, max_ratio
