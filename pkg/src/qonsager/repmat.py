"""Chain operators: evaluation representation, Kronecker assembly,
open-chain Hamiltonians, exact commutators and support analysis.

Conventions (fixed for the whole package):

* the chain state space is a tensor product with site 1 rightmost, so
  tensor slot 1 (leftmost) is site N;
* site j occupies bit j-1 of the basis index (site 1 least significant),
  bit value 0 is spin up;
* sigma_1 sigma_1 + sigma_2 sigma_2 is realised as 2(s+ s- + s- s+), which
  is the same matrix and keeps everything inside the rational function
  field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import ONE, Scalar, ZERO, qpow, rat, var
from .errors import (
    AlphabetMismatch,
    BoundarySingular,
    DimMismatch,
    InvalidEvaluationPoint,
)
from .qalgebra import FreeElement

# -- sparse matrices over the scalar field -----------------------------


class SparseMatrix:
    """Square sparse matrix, entries a finite map (row, col) -> Scalar."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries=None):
        self.dim = dim
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not v.is_zero:
                    if not (0 <= r < dim and 0 <= c < dim):
                        raise ValueError(f"index ({r},{c}) out of range for dim {dim}")
                    clean[(r, c)] = v
        self.entries = clean

    @staticmethod
    def identity(dim: int) -> "SparseMatrix":
        return SparseMatrix(dim, {(i, i): ONE for i in range(dim)})

    @staticmethod
    def zero(dim: int) -> "SparseMatrix":
        return SparseMatrix(dim)

    def _require_dim(self, other: "SparseMatrix") -> None:
        if self.dim != other.dim:
            raise DimMismatch(f"dims {self.dim} and {other.dim}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._require_dim(other)
        out = dict(self.entries)
        for key, v in other.entries.items():
            acc = out.get(key, ZERO) + v
            if acc.is_zero:
                out.pop(key, None)
            else:
                out[key] = acc
        return SparseMatrix(self.dim, out)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(self.dim, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def __mul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._require_dim(other)
        rows: dict = {}
        for (r, c), v in other.entries.items():
            rows.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in rows.get(k, ()):
                key = (r, c)
                acc = out.get(key, ZERO) + v * w
                if acc.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = acc
        return SparseMatrix(self.dim, out)

    def scale(self, coeff: Scalar) -> "SparseMatrix":
        if coeff.is_zero:
            return SparseMatrix(self.dim)
        return SparseMatrix(self.dim, {k: v * coeff for k, v in self.entries.items()})

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        dim = self.dim * other.dim
        out = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                out[(r1 * other.dim + r2, c1 * other.dim + c2)] = v1 * v2
        return SparseMatrix(dim, out)

    def map_entries(self, fn) -> "SparseMatrix":
        return SparseMatrix(self.dim, {k: fn(v) for k, v in self.entries.items()})

    def substitute(self, assignment) -> "SparseMatrix":
        return self.map_entries(lambda v: v.substitute(assignment))

    def extract_order(self, v: str, n: int) -> "SparseMatrix":
        return self.map_entries(lambda x: x.extract_order(v, n))

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.dim == other.dim and (self - other).is_zero

    def first_entry(self):
        """Smallest (row, col) with its value, or None."""
        if not self.entries:
            return None
        key = min(self.entries)
        return key, self.entries[key]

    def __repr__(self):
        return f"SparseMatrix(dim={self.dim}, nnz={len(self.entries)})"


# -- two-by-two building blocks ----------------------------------------

def _m2(entries) -> SparseMatrix:
    return SparseMatrix(2, entries)


SIGMA_PLUS = _m2({(0, 1): ONE})
SIGMA_MINUS = _m2({(1, 0): ONE})
SIGMA_3 = _m2({(0, 0): ONE, (1, 1): rat(-1)})
SIGMA_X = _m2({(0, 1): ONE, (1, 0): ONE})
Q_SIGMA3 = _m2({(0, 0): qpow(1), (1, 1): qpow(-1)})     # q^{sigma_3}
QINV_SIGMA3 = _m2({(0, 0): qpow(-1), (1, 1): qpow(1)})  # q^{-sigma_3}
ID2 = SparseMatrix.identity(2)


def _site_table(zeta: Scalar) -> dict:
    """Single-site image of every letter (principal-gradation evaluation)."""
    zinv = zeta.inverse()
    return {
        # quantum letters
        "e1": SIGMA_PLUS.scale(zeta),
        "e0": SIGMA_MINUS.scale(zeta),
        "f1": SIGMA_MINUS.scale(zinv),
        "f0": SIGMA_PLUS.scale(zinv),
        "t1": Q_SIGMA3,
        "t0": QINV_SIGMA3,
        "t1'": QINV_SIGMA3,
        "t0'": Q_SIGMA3,
        # classical letters (q -> 1 limit of the same table)
        "e1c": SIGMA_PLUS.scale(zeta),
        "e0c": SIGMA_MINUS.scale(zeta),
        "f1c": SIGMA_MINUS.scale(zinv),
        "f0c": SIGMA_PLUS.scale(zinv),
        "h1c": SIGMA_3,
        "h0c": -SIGMA_3,
    }


def eval_rep(x: FreeElement, zeta: Scalar = ONE) -> SparseMatrix:
    """Image of an element in the 2-dimensional evaluation representation."""
    if zeta.is_zero:
        raise InvalidEvaluationPoint("zeta = 0")
    table = _site_table(zeta)
    out = SparseMatrix.zero(2)
    for word, coeff in x.terms.items():
        m = ID2
        for letter in word:
            if letter not in table:
                raise AlphabetMismatch(f"letter {letter!r} has no evaluation image")
            m = m * table[letter]
        out = out + m.scale(coeff)
    return out


# -- N-site chain operators --------------------------------------------
#
# For a quantum letter, the N-site image of the iterated coproduct has a
# closed string form:
#   e_i:  t_i ... t_i  e_i  1 ... 1      (dressing above the insertion site)
#   f_i:  1 ... 1      f_i  t_i' ... t_i' (dressing below)
#   t_i:  t_i ... t_i
# Classical letters are primitive: sum of single-site insertions.

def _string_sum(N: int, site_m: SparseMatrix, above: SparseMatrix,
                below: SparseMatrix) -> SparseMatrix:
    total = SparseMatrix.zero(2**N)
    for site in range(1, N + 1):
        m = None
        for j in range(N, 0, -1):  # leftmost factor = site N
            factor = site_m if j == site else (above if j > site else below)
            m = factor if m is None else m.kron(factor)
        total = total + m
    return total


def _string_only(N: int, factor: SparseMatrix) -> SparseMatrix:
    m = None
    for _ in range(N):
        m = factor if m is None else m.kron(factor)
    return m


def letter_chain(letter: str, N: int, zeta: Scalar = ONE) -> SparseMatrix:
    if zeta.is_zero:
        raise InvalidEvaluationPoint("zeta = 0")
    table = _site_table(zeta)
    site_m = table[letter]
    if letter in ("t0", "t1", "t0'", "t1'"):
        return _string_only(N, site_m)
    if letter in ("e0", "e1"):
        t = table["t0" if letter == "e0" else "t1"]
        return _string_sum(N, site_m, above=t, below=ID2)
    if letter in ("f0", "f1"):
        tinv = table["t0'" if letter == "f0" else "t1'"]
        return _string_sum(N, site_m, above=ID2, below=tinv)
    # classical: primitive coproduct
    return _string_sum(N, site_m, above=ID2, below=ID2)


@dataclass(frozen=True)
class ChainOperator:
    """N-site operator with a provenance label."""

    matrix: SparseMatrix
    n_sites: int
    provenance: str = ""

    def __eq__(self, other):
        if isinstance(other, ChainOperator):
            return self.n_sites == other.n_sites and self.matrix == other.matrix
        return NotImplemented


class _ChainCache:
    """Per-(N, zeta) cache of letter matrices, keyed on the zeta object."""

    def __init__(self):
        self.data = {}

    def get(self, letter: str, N: int, zeta: Scalar) -> SparseMatrix:
        key = (letter, N, id(zeta))
        m = self.data.get(key)
        if m is None:
            m = letter_chain(letter, N, zeta)
            self.data[key] = m
        return m


_cache = _ChainCache()


def chain_operator(x: FreeElement, N: int, zeta: Scalar = ONE,
                   provenance: str = "") -> ChainOperator:
    """pi_zeta^(x N) after the (N-1)-fold coproduct, via the multiplicative
    per-letter string form (identical by the algebra-map property)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if zeta.is_zero:
        raise InvalidEvaluationPoint("zeta = 0")
    dim = 2**N
    out = SparseMatrix.zero(dim)
    for word, coeff in x.terms.items():
        m = SparseMatrix.identity(dim)
        for letter in word:
            m = m * _cache.get(letter, N, zeta)
        out = out + m.scale(coeff)
    return ChainOperator(out, N, provenance)


def embed_site(m2: SparseMatrix, site: int, N: int) -> SparseMatrix:
    """Single 2x2 operator at one site, identity elsewhere."""
    m = None
    for j in range(N, 0, -1):
        factor = m2 if j == site else ID2
        m = factor if m is None else m.kron(factor)
    return m


def embed_bond(left: SparseMatrix, right: SparseMatrix, low_site: int,
               N: int) -> SparseMatrix:
    """Two-site operator: ``left`` at site low_site+1, ``right`` at low_site."""
    m = None
    for j in range(N, 0, -1):
        if j == low_site + 1:
            factor = left
        elif j == low_site:
            factor = right
        else:
            factor = ID2
        m = factor if m is None else m.kron(factor)
    return m


# -- Hamiltonian --------------------------------------------------------


@dataclass(frozen=True)
class BoundaryParams:
    """Right-boundary field parameters; ep + em must not vanish identically."""

    kp: Scalar
    km: Scalar
    ep: Scalar
    em: Scalar

    def __post_init__(self):
        if (self.ep + self.em).is_zero:
            raise BoundarySingular("ep + em is identically zero")


def symbolic_params() -> BoundaryParams:
    return BoundaryParams(var("kp"), var("km"), var("ep"), var("em"))


def anisotropy() -> Scalar:
    """(q + q^-1) / 2."""
    return (qpow(1) + qpow(-1)) * rat(1, 2)


def bulk_density() -> SparseMatrix:
    """Two-site density 2(s+ s- + s- s+) + Delta s3 s3 on (site k+1, site k)."""
    hop = (SIGMA_PLUS.kron(SIGMA_MINUS) + SIGMA_MINUS.kron(SIGMA_PLUS)).scale(rat(2))
    return hop + SIGMA_3.kron(SIGMA_3).scale(anisotropy())


def boundary_field(params: BoundaryParams) -> SparseMatrix:
    """Site-1 boundary term as a 2x2 matrix."""
    esum = params.ep + params.em
    coeff3 = -(qpow(1) - qpow(-1)) * (params.ep - params.em) / (esum * rat(4))
    flip = SIGMA_PLUS.scale(params.kp) + SIGMA_MINUS.scale(params.km)
    return SIGMA_3.scale(coeff3) + flip.scale(-(esum.inverse()))


def hamiltonian(N: int, params: BoundaryParams) -> ChainOperator:
    """Open-chain Hamiltonian: -1/2 sum of bond densities plus the site-1
    boundary field."""
    if N < 2:
        raise ValueError("hamiltonian needs N >= 2")
    dim = 2**N
    total = SparseMatrix.zero(dim)
    dens = bulk_density().scale(rat(-1, 2))
    for k in range(1, N):
        total = total + embed_bond_matrix(dens, k, N)
    total = total + embed_site(boundary_field(params), 1, N)
    return ChainOperator(total, N, "hamiltonian")


def embed_bond_matrix(m4: SparseMatrix, low_site: int, N: int) -> SparseMatrix:
    """Embed a 4x4 bond operator acting on (low_site+1, low_site)."""
    if m4.dim != 4:
        raise DimMismatch("bond operator must be 4x4")
    m = None
    j = N
    while j >= 1:
        if j == low_site + 1:
            factor = m4
            j -= 2
        else:
            factor = ID2
            j -= 1
        m = factor if m is None else m.kron(factor)
    return m


def commutator(A: ChainOperator, B: ChainOperator) -> ChainOperator:
    if A.n_sites != B.n_sites:
        raise DimMismatch(f"site counts {A.n_sites} and {B.n_sites}")
    return ChainOperator(A.matrix * B.matrix - B.matrix * A.matrix, A.n_sites,
                         f"[{A.provenance}, {B.provenance}]")


# -- support analysis ---------------------------------------------------


def _ptrace_site(m: SparseMatrix, site: int, N: int) -> SparseMatrix:
    """Partial trace over one site (result on N-1 sites)."""
    bit = 1 << (site - 1)
    low = bit - 1
    out: dict = {}
    for (r, c), v in m.entries.items():
        if (r & bit) != (c & bit):
            continue
        rr = (r & low) | ((r >> 1) & ~low)
        cc = (c & low) | ((c >> 1) & ~low)
        key = (rr, cc)
        acc = out.get(key, ZERO) + v
        if acc.is_zero:
            out.pop(key, None)
        else:
            out[key] = acc
    return SparseMatrix(2 ** (N - 1), out)


def _insert_identity(m: SparseMatrix, site: int, N: int) -> SparseMatrix:
    """Re-tensor an (N-1)-site operator with the identity at ``site``."""
    bit = 1 << (site - 1)
    low = bit - 1
    out = {}
    for (r, c), v in m.entries.items():
        rr = (r & low) | ((r & ~low) << 1)
        cc = (c & low) | ((c & ~low) << 1)
        for b in (0, bit):
            out[(rr | b, cc | b)] = v
    return SparseMatrix(2**N, out)


def support(A: ChainOperator) -> tuple:
    """Minimal set of sites the operator acts on non-trivially.

    Site j is outside the support iff A equals its site-j partial trace,
    halved and re-tensored with the identity at j.
    """
    N = A.n_sites
    sites = []
    for j in range(1, N + 1):
        reduced = _ptrace_site(A.matrix, j, N).scale(rat(1, 2))
        if _insert_identity(reduced, j, N) != A.matrix:
            sites.append(j)
    return tuple(sites)


# -- specific identities -------------------------------------------------


def fundamental_chain(kind: str, N: int, params: BoundaryParams) -> ChainOperator:
    """Direct string construction of the two fundamental symmetry operators
    (independent of the coproduct machinery; used as an oracle)."""
    flip = SIGMA_PLUS.scale(params.kp) + SIGMA_MINUS.scale(params.km)
    if kind == "W0":
        string, eps = Q_SIGMA3, params.ep
    elif kind == "W1":
        string, eps = QINV_SIGMA3, params.em
    else:
        raise ValueError(kind)
    total = _string_sum_partial(N, flip, string)
    total = total + _string_only(N, string).scale(eps)
    return ChainOperator(total, N, kind)


def _string_sum_partial(N: int, site_m: SparseMatrix,
                        above: SparseMatrix) -> SparseMatrix:
    total = SparseMatrix.zero(2**N)
    for site in range(1, N + 1):
        m = None
        for j in range(N, 0, -1):
            factor = site_m if j == site else (above if j > site else ID2)
            m = factor if m is None else m.kron(factor)
        total = total + m
    return total


def gamma_bond() -> SparseMatrix:
    """The exact two-site commutator [bond density, W0-string]:
    (2 kp s+ - 2 km s-) (x) (Delta - q^{s3}) s3
    + (Delta q^{s3} - 1) s3 (x) (2 kp s+ - 2 km s-), upper site leftmost."""
    flip2 = (SIGMA_PLUS.scale(var("kp")) - SIGMA_MINUS.scale(var("km"))).scale(rat(2))
    d = anisotropy()
    left = (ID2.scale(d) - Q_SIGMA3) * SIGMA_3
    right = (Q_SIGMA3.scale(d) - ID2) * SIGMA_3
    return flip2.kron(left) + right.kron(flip2)


def local_gamma_identity(N: int, params: BoundaryParams) -> dict:
    """Check [h_i, W0^(N)] = q-string (x) Gamma_{i+1,i} (x) identities for
    every bond i; returns bond -> bool."""
    if N < 3:
        raise ValueError("needs N >= 3 so that an interior bond exists")
    w0 = fundamental_chain("W0", N, params).matrix
    dens = bulk_density()
    results = {}
    for i in range(1, N):
        lhs = embed_bond_matrix(dens, i, N) * w0 - w0 * embed_bond_matrix(dens, i, N)
        rhs = _gamma_rhs(i, N, params)
        results[i] = lhs == rhs
    return results


def _gamma_rhs(i: int, N: int, params: BoundaryParams) -> SparseMatrix:
    flip2 = (SIGMA_PLUS.scale(params.kp) - SIGMA_MINUS.scale(params.km)).scale(rat(2))
    d = anisotropy()
    left = (ID2.scale(d) - Q_SIGMA3) * SIGMA_3
    right = (Q_SIGMA3.scale(d) - ID2) * SIGMA_3
    gamma = flip2.kron(left) + right.kron(flip2)
    m = None
    j = N
    while j >= 1:
        if j > i + 1:
            factor, step = Q_SIGMA3, 1
        elif j == i + 1:
            factor, step = gamma, 2
        else:
            factor, step = ID2, 1
        m = factor if m is None else m.kron(factor)
        j -= step
    return m


def boundary_bracket_closed_form(N: int, params: BoundaryParams) -> SparseMatrix:
    """1/2 (q - q^-1) (q^{s3})^(x(N-1)) (x) (kp s+ - km s-) at site 1."""
    flip = SIGMA_PLUS.scale(params.kp) - SIGMA_MINUS.scale(params.km)
    m = None
    for j in range(N, 1, -1):
        m = Q_SIGMA3 if m is None else m.kron(Q_SIGMA3)
    m = flip if m is None else m.kron(flip)
    return m.scale((qpow(1) - qpow(-1)) * rat(1, 2))


def total_residual_closed_form(kind: str, N: int,
                               params: BoundaryParams) -> SparseMatrix:
    """[H_N, W_i^(N)] telescopes to a pure site-N term:
    +1/2 (q - q^-1)(kp s+ - km s-)_N for W0, with opposite sign for W1."""
    flip = SIGMA_PLUS.scale(params.kp) - SIGMA_MINUS.scale(params.km)
    sign = rat(1, 2) if kind == "W0" else rat(-1, 2)
    return embed_site(flip, N, N).scale((qpow(1) - qpow(-1)) * sign)


def spin_reversal_conjugate(A: ChainOperator) -> ChainOperator:
    """Conjugation by sigma_x at every site."""
    mask = (1 << A.n_sites) - 1
    out = {(r ^ mask, c ^ mask): v for (r, c), v in A.matrix.entries.items()}
    return ChainOperator(SparseMatrix(A.matrix.dim, out), A.n_sites,
                         f"nu({A.provenance})nu")


# -- coordinate-list export ----------------------------------------------


def matrix_to_coords(A: ChainOperator) -> dict:
    from .coeff import scalar_str

    entries = [[r, c, scalar_str(v)] for (r, c), v in sorted(A.matrix.entries.items())]
    return {"sites": A.n_sites, "dim": A.matrix.dim, "entries": entries,
            "provenance": A.provenance}


def matrix_from_coords(doc: dict) -> ChainOperator:
    from .coeff import parse_scalar

    dim = doc["dim"]
    entries = {(r, c): parse_scalar(s) for r, c, s in doc["entries"]}
    return ChainOperator(SparseMatrix(dim, entries), doc["sites"],
                         doc.get("provenance", ""))
