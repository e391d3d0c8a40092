"""Finite groups with verified unitary irreps, group algebra, Plancherel.

Normalization: the Haar measure has total mass one (weights 1/|G|), so

    fhat(gamma)   = (1/|G|) sum_g f(g) U_gamma(g)
    f(g)          = sum_gamma d_gamma Tr[U_gamma(g)^* fhat(gamma)]
    (f1 * f2)(g)  = (1/|G|) sum_h f1(h) f2(h^{-1} g)
    f^*(g)        = conj(f(g^{-1}))

Irreps are supplied (in code or in group definition files) and verified,
never computed: unitarity and the homomorphism property to 1e-12,
irreducibility via (1/|G|) sum |chi|^2 = 1 to 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import numpy as np

UNITARITY_TOL = 1e-12
CHARACTER_TOL = 1e-10


class GroupValidationError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """Group given by its Cayley table: table[a, b] = index of a.b."""

    name: str
    table: np.ndarray

    def __post_init__(self):
        t = np.ascontiguousarray(np.asarray(self.table, dtype=np.int64))
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return int(self._identity())

    def _identity(self) -> int:
        n = self.order
        for e in range(n):
            if np.array_equal(self.table[e], np.arange(n)) and np.array_equal(
                self.table[:, e], np.arange(n)
            ):
                return e
        raise GroupValidationError(f"{self.name}: no identity element")

    @property
    def inverses(self) -> np.ndarray:
        e = self.identity
        inv = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            w = np.where(self.table[g] == e)[0]
            if w.size != 1 or self.table[w[0], g] != e:
                raise GroupValidationError(f"{self.name}: element {g} lacks an inverse")
            inv[g] = w[0]
        return inv

    def mult(self, a: int, b: int) -> int:
        return int(self.table[a, b])


def validate_group(group: FiniteGroup, rng_samples: int = 10000) -> None:
    """Check the Cayley table is a group law.

    Associativity is checked exhaustively for order <= 64 and on at least
    ``rng_samples`` random triples otherwise; identity and inverses are
    always checked exactly.
    """
    t = group.table
    n = group.order
    if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
        raise GroupValidationError(f"{group.name}: malformed Cayley table")
    for g in range(n):  # each row/column a permutation (cancellation law)
        if len(set(t[g].tolist())) != n or len(set(t[:, g].tolist())) != n:
            raise GroupValidationError(f"{group.name}: table row/col {g} not a permutation")
    if n <= 64:
        # t[t, :][a,b,c] = (ab)c and t[:, t][a,b,c] = a(bc)
        if not np.array_equal(t[t, :], t[:, t]):
            raise GroupValidationError(f"{group.name}: associativity fails")
    else:
        rng = np.random.default_rng(0)
        abc = rng.integers(0, n, size=(max(rng_samples, 10000), 3))
        for a, b, c in abc:
            if t[t[a, b], c] != t[a, t[b, c]]:
                raise GroupValidationError(f"{group.name}: associativity fails at {(a, b, c)}")
    group._identity()
    group.inverses  # raises if inconsistent


@dataclass(frozen=True)
class Irrep:
    """A verified unitary irreducible representation."""

    label: str
    matrices: np.ndarray  # shape (|G|, d, d)

    def __post_init__(self):
        m = np.asarray(self.matrices, dtype=complex)
        if m.ndim != 3 or m.shape[1] != m.shape[2]:
            raise ValueError(f"irrep {self.label}: matrices must be (|G|, d, d)")
        m.flags.writeable = False
        object.__setattr__(self, "matrices", m)

    @property
    def dimension(self) -> int:
        return self.matrices.shape[1]

    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


def validate_irrep(group: FiniteGroup, rep: Irrep, require_irreducible: bool = True) -> None:
    m = rep.matrices
    n = group.order
    if m.shape[0] != n:
        raise GroupValidationError(f"irrep {rep.label}: wrong number of matrices")
    d = rep.dimension
    eye = np.eye(d)
    for g in range(n):
        if np.max(np.abs(m[g] @ m[g].conj().T - eye)) > UNITARITY_TOL * 10:
            raise GroupValidationError(f"irrep {rep.label}: matrix {g} not unitary")
    prod = np.einsum("gij,hjk->ghik", m, m)
    if np.max(np.abs(prod - m[group.table])) > UNITARITY_TOL * 100:
        raise GroupValidationError(f"irrep {rep.label}: not a homomorphism")
    if require_irreducible:
        chi = rep.character()
        if abs(np.sum(np.abs(chi) ** 2) / n - 1.0) > CHARACTER_TOL:
            raise GroupValidationError(f"irrep {rep.label}: reducible by character norm")


@dataclass(frozen=True)
class DualList:
    """A complete list of pairwise inequivalent irreps."""

    group: FiniteGroup
    irreps: tuple[Irrep, ...]

    def __post_init__(self):
        object.__setattr__(self, "irreps", tuple(self.irreps))

    def validate(self) -> None:
        n = self.group.order
        for rep in self.irreps:
            validate_irrep(self.group, rep)
        chars = np.array([r.character() for r in self.irreps])
        gram = chars @ chars.conj().T / n
        if np.max(np.abs(gram - np.eye(len(self.irreps)))) > CHARACTER_TOL:
            raise GroupValidationError(f"{self.group.name}: irreps not pairwise inequivalent")
        if sum(r.dimension**2 for r in self.irreps) != n:
            raise GroupValidationError(f"{self.group.name}: dual list incomplete")


@dataclass(frozen=True)
class GroupAlgElem:
    """A complex function on the group (the group algebra at finite scale)."""

    group: FiniteGroup
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.group.order,):
            raise ValueError("coeffs must have one entry per group element")
        if not np.all(np.isfinite(c)):
            raise ValueError("coeffs must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __add__(self, other: "GroupAlgElem") -> "GroupAlgElem":
        _same_group(self, other)
        return GroupAlgElem(self.group, self.coeffs + other.coeffs)

    def __rmul__(self, scalar: complex) -> "GroupAlgElem":
        return GroupAlgElem(self.group, scalar * self.coeffs)


@dataclass(frozen=True)
class PlancherelBlocks:
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(np.asarray(b, dtype=complex) for b in self.blocks))


def _same_group(a, b):
    if a.group is not b.group and a.group.name != b.group.name:
        raise ValueError("elements live on different groups")


def delta(group: FiniteGroup, g: int) -> GroupAlgElem:
    """|G| * delta_g, the convolution-unit-normalized point mass."""
    c = np.zeros(group.order, dtype=complex)
    c[g] = group.order
    return GroupAlgElem(group, c)


def plancherel(f: GroupAlgElem, dual: DualList) -> PlancherelBlocks:
    """fhat(gamma) = (1/|G|) sum_g f(g) U_gamma(g); rejects incomplete duals."""
    _check_dual(f.group, dual)
    n = f.group.order
    return PlancherelBlocks(
        tuple(np.tensordot(f.coeffs, rep.matrices, axes=(0, 0)) / n for rep in dual.irreps)
    )


def inverse_plancherel(blocks: PlancherelBlocks, dual: DualList) -> GroupAlgElem:
    """f(g) = sum_gamma d_gamma Tr[U_gamma(g)^* fhat(gamma)]."""
    if len(blocks.blocks) != len(dual.irreps):
        raise ValueError("block count does not match the dual list")
    n = dual.group.order
    out = np.zeros(n, dtype=complex)
    for rep, b in zip(dual.irreps, blocks.blocks):
        d = rep.dimension
        if b.shape != (d, d):
            raise ValueError(f"block for {rep.label} has shape {b.shape}, expected {(d, d)}")
        out += d * np.einsum("gji,ji->g", rep.matrices.conj(), b)
    return GroupAlgElem(dual.group, out)


def convolve(f1: GroupAlgElem, f2: GroupAlgElem) -> GroupAlgElem:
    """(f1*f2)(g) = (1/|G|) sum_h f1(h) f2(h^{-1} g)."""
    _same_group(f1, f2)
    grp = f1.group
    inv = grp.inverses
    # rows: h, cols: g -> f2 evaluated at h^{-1} g
    idx = grp.table[inv, :]
    out = f1.coeffs @ f2.coeffs[idx] / grp.order
    return GroupAlgElem(grp, out)


def adjoint(f: GroupAlgElem) -> GroupAlgElem:
    """f^*(g) = conj(f(g^{-1}))."""
    return GroupAlgElem(f.group, np.conj(f.coeffs[f.group.inverses]))


def cstar_norm(f: GroupAlgElem, dual: DualList) -> float:
    """sup over blocks of the largest singular value of fhat(gamma)."""
    blocks = plancherel(f, dual)
    return max(
        float(np.linalg.svd(b, compute_uv=False)[0]) if b.size else 0.0
        for b in blocks.blocks
    )


def _check_dual(group: FiniteGroup, dual: DualList):
    if dual.group.name != group.name or dual.group.order != group.order:
        raise ValueError("dual list belongs to a different group")
    if sum(r.dimension**2 for r in dual.irreps) != group.order:
        raise ValueError("dual list is incomplete")


# ---------------------------------------------------------------------------
# Built-in groups


def _cyclic(n: int) -> tuple[FiniteGroup, DualList]:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    grp = FiniteGroup(f"z{n}", table)
    irreps = []
    for k in range(n):
        mats = np.exp(2j * np.pi * k * np.arange(n) / n).reshape(n, 1, 1)
        irreps.append(Irrep(f"w{k}", mats))
    return grp, DualList(grp, tuple(irreps))


def _perm_group(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            comp = tuple(a[b[k]] for k in range(len(a)))  # (a.b)(k) = a(b(k))
            table[i, j] = index[comp]
    return FiniteGroup(name, table)


def _s3() -> tuple[FiniteGroup, DualList]:
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    grp = _perm_group(perms, "s3")
    n = 6
    triv = Irrep("trivial", np.ones((n, 1, 1), dtype=complex))
    sign = np.array([1.0, -1.0, -1.0, -1.0, 1.0, 1.0]).reshape(n, 1, 1)
    # standard 2-dim: action on the plane orthogonal to (1,1,1)
    basis = np.array([[1, -1, 0], [1, 1, -2]], dtype=float)
    basis = (basis.T / np.linalg.norm(basis, axis=1)).T  # rows orthonormal
    mats = np.zeros((n, 2, 2), dtype=complex)
    for g, p in enumerate(perms):
        pm = np.zeros((3, 3))
        for k in range(3):
            pm[p[k], k] = 1.0
        mats[g] = basis @ pm @ basis.T
    dual = DualList(grp, (triv, Irrep("sign", sign), Irrep("standard", mats)))
    return grp, dual


def _d4() -> tuple[FiniteGroup, DualList]:
    # elements r^a s^b indexed a + 4b; s r s = r^{-1}
    def mult(x, y):
        a, b = x % 4, x // 4
        c, d = y % 4, y // 4
        return (a + (c if b == 0 else -c)) % 4 + 4 * ((b + d) % 2)

    table = np.array([[mult(x, y) for y in range(8)] for x in range(8)], dtype=np.int64)
    grp = FiniteGroup("d4", table)
    ones = []
    for (er, es), label in [((1, 1), "trivial"), ((1, -1), "sgn_s"), ((-1, 1), "sgn_r"), ((-1, -1), "sgn_rs")]:
        vals = np.array([er ** (x % 4) * es ** (x // 4) for x in range(8)], dtype=complex)
        ones.append(Irrep(label, vals.reshape(8, 1, 1)))
    r = np.array([[0.0, -1.0], [1.0, 0.0]])
    s = np.array([[1.0, 0.0], [0.0, -1.0]])
    mats = np.zeros((8, 2, 2), dtype=complex)
    for x in range(8):
        m = np.linalg.matrix_power(r, x % 4)
        if x // 4:
            m = m @ s
        mats[x] = m
    dual = DualList(grp, tuple(ones) + (Irrep("planar", mats),))
    return grp, dual


def _q8() -> tuple[FiniteGroup, DualList]:
    # elements: +-1, +-i, +-j, +-k as (sign, axis), axis in {1, i, j, k}
    labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    mul = {  # quaternion axis products: (axis, axis) -> (sign, axis)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mult(x, y):
        sx, ax = (1 if x < 4 else -1), x % 4
        sy, ay = (1 if y < 4 else -1), y % 4
        s, a = mul[(ax, ay)]
        s *= sx * sy
        return a if s == 1 else a + 4

    table = np.array([[mult(x, y) for y in range(8)] for x in range(8)], dtype=np.int64)
    grp = FiniteGroup("q8", table)
    ones = []
    # 1-dim irreps factor through Q8/{+-1} = Z2 x Z2
    for (ei, ej), label in [((1, 1), "trivial"), ((1, -1), "sgn_j"), ((-1, 1), "sgn_i"), ((-1, -1), "sgn_ij")]:
        vals = []
        for x in range(8):
            a = x % 4
            vals.append({0: 1, 1: ei, 2: ej, 3: ei * ej}[a])
        ones.append(Irrep(label, np.array(vals, dtype=complex).reshape(8, 1, 1)))
    ui = np.array([[1j, 0], [0, -1j]])
    uj = np.array([[0, -1], [1, 0]], dtype=complex)
    base = {0: np.eye(2, dtype=complex), 1: ui, 2: uj, 3: ui @ uj}
    mats = np.zeros((8, 2, 2), dtype=complex)
    for x in range(8):
        mats[x] = base[x % 4] * (1 if x < 4 else -1)
    dual = DualList(grp, tuple(ones) + (Irrep("spinor", mats),))
    return grp, dual


_BUILTIN_BUILDERS = {
    "z2": lambda: _cyclic(2),
    "z3": lambda: _cyclic(3),
    "z4": lambda: _cyclic(4),
    "s3": _s3,
    "d4": _d4,
    "q8": _q8,
}

BUILTIN_GROUP_NAMES = tuple(sorted(_BUILTIN_BUILDERS))


def builtin_group(name: str) -> tuple[FiniteGroup, DualList]:
    """A built-in group with its verified dual list."""
    try:
        grp, dual = _BUILTIN_BUILDERS[name.lower()]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; available: {BUILTIN_GROUP_NAMES}") from None
    validate_group(grp)
    dual.validate()
    return grp, dual


def subgroup_as_group(group: FiniteGroup, elements: list[int], name: str) -> FiniteGroup:
    """Relabel a (verified closed) subset as a standalone group."""
    elements = list(elements)
    pos = {g: i for i, g in enumerate(elements)}
    k = len(elements)
    table = np.zeros((k, k), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            prod = group.mult(a, b)
            if prod not in pos:
                raise GroupValidationError(f"{name}: subset not closed under the table")
            table[i, j] = pos[prod]
    sub = FiniteGroup(name, table)
    validate_group(sub)
    return sub


# ---------------------------------------------------------------------------
# Group definition files: order, flattened Cayley table (row-major, 0-based),
# per-irrep matrix blocks as interleaved re/im decimals.


def write_group_file(fh, group: FiniteGroup, dual: DualList) -> None:
    fh.write(f"name {group.name}\n")
    fh.write(f"order {group.order}\n")
    fh.write("table\n")
    for row in group.table:
        fh.write(" ".join(str(int(v)) for v in row) + "\n")
    for rep in dual.irreps:
        fh.write(f"irrep {rep.label} {rep.dimension}\n")
        for g in range(group.order):
            flat = rep.matrices[g].reshape(-1)
            fh.write(" ".join(f"{z.real!r} {z.imag!r}" for z in flat) + "\n")


def read_group_file(fh) -> tuple[FiniteGroup, DualList]:
    tokens: list[str] = []
    for line in fh:
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    pos = 0

    def take() -> str:
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    name = "group"
    order = None
    table = None
    irreps = []
    while pos < len(tokens):
        key = take()
        if key == "name":
            name = take()
        elif key == "order":
            order = int(take())
        elif key == "table":
            if order is None:
                raise ValueError("group file: order must precede table")
            table = np.array([int(take()) for _ in range(order * order)],
                             dtype=np.int64).reshape(order, order)
        elif key == "irrep":
            label = take()
            d = int(take())
            vals = np.array([float(take()) for _ in range(order * d * d * 2)])
            mats = (vals[0::2] + 1j * vals[1::2]).reshape(order, d, d)
            irreps.append(Irrep(label, mats))
        else:
            raise ValueError(f"group file: unexpected token {key!r}")
    if table is None:
        raise ValueError("group file: missing Cayley table")
    grp = FiniteGroup(name, table)
    validate_group(grp)
    dual = DualList(grp, tuple(irreps))
    dual.validate()
    return grp, dual


def load_shipped_group(name: str) -> tuple[FiniteGroup, DualList]:
    """Load one of the shipped group definition fixtures by name."""
    ref = resources.files("redquant").joinpath(f"data/groups/{name.lower()}.grp")
    with ref.open("r") as fh:
        return read_group_file(fh)
