"""Stabiliser codes: the container, named small codes, lattice codes and code families.

Surface codes are built as products of one-dimensional cell complexes. An
"open" path of length ``L`` has ``L`` edges and ``L-1`` interior vertices (its
endpoints are boundary and carry no cell); a "closed" path has ``L`` vertices
and ``L-1`` edges. Qubits live on cells with exactly one edge factor,
X-stabilisers on all-vertex cells, Z-stabilisers on cells with two edge
factors. With the x axis open and the others closed the logical Z is a string
along x and the logical X is a sheet transverse to it.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import gf2
from .errors import (
    CodeValidationError,
    ConfigurationError,
    SizeError,
    UnsupportedError,
)
from .pauli import (
    PauliOperator,
    commutes,
    multiply,
    pauli_from_string,
    pauli_to_string,
    symplectic_inner,
)


@dataclass(frozen=True)
class StabiliserCode:
    n: int
    k: int
    stabilisers: Tuple[PauliOperator, ...]
    logical_x: Tuple[PauliOperator, ...]
    logical_z: Tuple[PauliOperator, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "stabilisers", tuple(self.stabilisers))
        object.__setattr__(self, "logical_x", tuple(self.logical_x))
        object.__setattr__(self, "logical_z", tuple(self.logical_z))

    # validation ---------------------------------------------------------

    def validate(self) -> "StabiliserCode":
        ops = self.stabilisers + self.logical_x + self.logical_z
        if any(p.n != self.n for p in ops):
            raise CodeValidationError("operator size differs from n")
        if len(self.stabilisers) != self.n - self.k:
            raise CodeValidationError(
                f"expected {self.n - self.k} stabilisers, got {len(self.stabilisers)}"
            )
        if len(self.logical_x) != self.k or len(self.logical_z) != self.k:
            raise CodeValidationError("need k logical X and k logical Z operators")
        for s in self.stabilisers:
            if not s.is_hermitian():
                raise CodeValidationError(f"stabiliser {s} is not Hermitian")
        for a, b in itertools.combinations(self.stabilisers, 2):
            if not commutes(a, b):
                raise CodeValidationError(f"stabilisers {a} and {b} anticommute")
        for s in self.stabilisers:
            for lg in self.logical_x + self.logical_z:
                if not commutes(s, lg):
                    raise CodeValidationError(f"logical {lg} anticommutes with stabiliser {s}")
        for i in range(self.k):
            for j in range(self.k):
                want = 1 if i == j else 0
                if symplectic_inner(self.logical_x[i], self.logical_z[j]) != want:
                    raise CodeValidationError(f"logical pair ({i},{j}) has wrong commutation")
                if i < j and (
                    symplectic_inner(self.logical_x[i], self.logical_x[j])
                    or symplectic_inner(self.logical_z[i], self.logical_z[j])
                ):
                    raise CodeValidationError("logical operators of the same type must commute")
        if gf2.rank(s.symplectic for s in self.stabilisers) != self.n - self.k:
            raise CodeValidationError("stabilisers are not independent")
        # -I in the group would make the code space empty.
        if self.in_stabiliser_group(PauliOperator(self.n, 0, 0, 2)):
            raise CodeValidationError("stabiliser group contains -I")
        return self

    # queries --------------------------------------------------------------

    @property
    def is_css(self) -> bool:
        return all(s.is_x_type() or s.is_z_type() for s in self.stabilisers)

    @property
    def x_stabilisers(self) -> List[PauliOperator]:
        return [s for s in self.stabilisers if s.is_x_type()]

    @property
    def z_stabilisers(self) -> List[PauliOperator]:
        return [s for s in self.stabilisers if s.is_z_type() and not s.is_identity()]

    def stabiliser_basis(self) -> List[int]:
        return _cached_basis(self)

    def syndrome(self, p: PauliOperator) -> int:
        """Bit ``j`` set when ``p`` anticommutes with stabiliser ``j``."""
        out = 0
        for j, s in enumerate(self.stabilisers):
            if symplectic_inner(p, s):
                out |= 1 << j
        return out

    def stabiliser_decomposition(self, p: PauliOperator) -> Optional[int]:
        """Mask of generators whose product equals ``p`` up to phase, or None."""
        return gf2.solve([s.symplectic for s in self.stabilisers], p.symplectic)

    def stabiliser_product(self, mask: int) -> PauliOperator:
        acc = PauliOperator.identity(self.n)
        for j, s in enumerate(self.stabilisers):
            if (mask >> j) & 1:
                acc = multiply(acc, s)
        return acc

    def in_stabiliser_group(self, p: PauliOperator, with_sign: bool = True) -> bool:
        mask = self.stabiliser_decomposition(p)
        if mask is None:
            return False
        if not with_sign:
            return True
        return self.stabiliser_product(mask).phase == p.phase

    def logical_class(self, p: PauliOperator) -> Tuple[int, int]:
        """(x-part, z-part) bitmasks of the logical class of a normaliser element."""
        a = b = 0
        for i in range(self.k):
            if symplectic_inner(p, self.logical_z[i]):
                a |= 1 << i
            if symplectic_inner(p, self.logical_x[i]):
                b |= 1 << i
        return a, b

    def is_logical(self, p: PauliOperator) -> bool:
        """In the normaliser and not in the stabiliser group (up to phase)."""
        if self.syndrome(p):
            return False
        return self.logical_class(p) != (0, 0)

    def logical_operator(self, label: str) -> PauliOperator:
        a, b = parse_logical_label(label, self.k)
        return self.logical_from_class(a, b)

    def logical_from_class(self, a: int, b: int) -> PauliOperator:
        """Hermitian representative: product of logical X's and Z's, Y's as i·X·Z."""
        acc = PauliOperator.identity(self.n)
        for i in range(self.k):
            xa, zb = (a >> i) & 1, (b >> i) & 1
            if xa and zb:
                y = multiply(self.logical_x[i], self.logical_z[i])
                y = PauliOperator(y.n, y.x, y.z, y.phase + 1)
                acc = multiply(acc, y)
            elif xa:
                acc = multiply(acc, self.logical_x[i])
            elif zb:
                acc = multiply(acc, self.logical_z[i])
        return acc

    def logical_classes(self) -> List[Tuple[int, int]]:
        """All 4^k - 1 non-identity classes: fewest logical qubits first, then X < Z < Y."""
        out = [(a, b) for a in range(1 << self.k) for b in range(1 << self.k) if (a, b) != (0, 0)]
        rank = str.maketrans("XZY", "abc")
        return sorted(out, key=lambda ab: (class_weight(ab), logical_label(*ab).translate(rank)))

    # serialisation --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "stabilisers": [pauli_to_string(s) for s in self.stabilisers],
            "logical_x": [pauli_to_string(s) for s in self.logical_x],
            "logical_z": [pauli_to_string(s) for s in self.logical_z],
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StabiliserCode":
        try:
            n, k = int(data["n"]), int(data["k"])
            parse = lambda items: tuple(pauli_from_string(s, n) for s in items)
            return cls(
                n,
                k,
                parse(data["stabilisers"]),
                parse(data["logical_x"]),
                parse(data["logical_z"]),
                data.get("label", ""),
            )
        except (KeyError, TypeError) as exc:
            raise CodeValidationError(f"malformed code description: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "StabiliserCode":
        return cls.from_dict(json.loads(text))


def _cached_basis(code: StabiliserCode) -> List[int]:
    hit = code.__dict__.get("_basis")
    if hit is None:
        hit = gf2.reduce_basis(s.symplectic for s in code.stabilisers)
        object.__setattr__(code, "_basis", hit)
    return hit


def class_weight(ab: Tuple[int, int]) -> int:
    a, b = ab
    return (a | b).bit_count()


def logical_label(a: int, b: int) -> str:
    """``(1, 0) -> "X1"``, ``(1, 1) -> "Y1"``, ``(1, 2) -> "X1Z2"``."""
    parts = []
    i = 0
    while (a >> i) or (b >> i):
        xa, zb = (a >> i) & 1, (b >> i) & 1
        if xa or zb:
            parts.append(("Y" if xa and zb else "X" if xa else "Z") + str(i + 1))
        i += 1
    return "".join(parts) or "I"


def parse_logical_label(label: str, k: int) -> Tuple[int, int]:
    p = pauli_from_string(label, k)
    return p.x, p.z


# concrete codes -----------------------------------------------------------

STEANE_TABLE = {
    "stabilisers": [
        "X1X2X3X4", "X2X3X5X6", "X3X4X5X7",
        "Z1Z2Z3Z4", "Z2Z3Z5Z6", "Z3Z4Z5Z7",
    ],
    "logical_x": ["X1X2X3X4X5X6X7"],
    "logical_z": ["Z1Z2Z3Z4Z5Z6Z7"],
}

# Z10Z11Z13Z14, a common variant of the slot below, anticommutes with
# X3X4X5X7X10X11X12X14. Every single-qubit repair of it yields the same
# stabiliser group; this one follows the Steane pattern.
REED_MULLER_SLOT_FIX = ("Z10Z11Z13Z14", "Z10Z11Z12Z14")

REED_MULLER_TABLE = {
    "stabilisers": [
        "X1X2X3X4X8X9X10X11", "X2X3X5X6X9X10X12X13",
        "X3X4X5X7X10X11X12X14", "X8X9X10X11X12X13X14X15",
        "Z1Z2Z3Z4", "Z2Z3Z5Z6", "Z3Z4Z5Z7",
        "Z8Z9Z10Z11", "Z9Z10Z12Z13", "Z10Z11Z12Z14", "Z12Z13Z14Z15",
        "Z1Z4Z8Z11", "Z2Z5Z9Z12", "Z6Z7Z13Z14",
    ],
    "logical_x": ["X1X2X3X4X5X6X7"],
    "logical_z": ["Z1Z2Z3Z4Z5Z6Z7"],
}


def _from_table(table: dict, n: int, label: str) -> StabiliserCode:
    parse = lambda items: tuple(pauli_from_string(s, n) for s in items)
    return StabiliserCode(
        n, 1, parse(table["stabilisers"]), parse(table["logical_x"]), parse(table["logical_z"]), label
    ).validate()


def build_steane() -> StabiliserCode:
    return _from_table(STEANE_TABLE, 7, "steane")


def build_reed_muller() -> StabiliserCode:
    return _from_table(REED_MULLER_TABLE, 15, "reed-muller")


def build_trivial() -> StabiliserCode:
    """The unencoded qubit as a [[1,1,1]] code."""
    return StabiliserCode(1, 1, (), (pauli_from_string("X"),), (pauli_from_string("Z"),), "trivial").validate()


def build_repetition(n: int) -> StabiliserCode:
    """Bit-flip repetition code: Z_iZ_{i+1} checks, logical Z on one qubit."""
    if n < 1:
        raise SizeError("repetition code needs n >= 1")
    stabs = [PauliOperator.from_support(n, "Z", (i, i + 1)) for i in range(n - 1)]
    lx = PauliOperator.from_support(n, "X", range(n))
    lz = PauliOperator.single(n, 0, "Z")
    return StabiliserCode(n, 1, stabs, (lx,), (lz,), f"repetition({n})").validate()


def _independent(ops: Sequence[PauliOperator]) -> List[PauliOperator]:
    keep = gf2.independent_subset([p.symplectic for p in ops])
    return [ops[i] for i in keep]


def build_toric(l: int) -> StabiliserCode:
    """Toric code on an l×l periodic square lattice; qubits on edges.

    Edge ``h(i, j)`` joins vertex (i, j) to (i, j+1); ``v(i, j)`` joins (i, j)
    to (i+1, j). Logical pair 1 is (X on the h-edges of column 0, Z on the
    h-edges of row 0); pair 2 is (X on the v-edges of row 0, Z on the
    v-edges of column 0).
    """
    if l < 2:
        raise SizeError("toric code needs l >= 2")
    n = 2 * l * l
    h = lambda i, j: (i % l) * l + (j % l)
    v = lambda i, j: l * l + (i % l) * l + (j % l)
    stars = [
        PauliOperator.from_support(n, "X", {h(i, j), h(i, j - 1), v(i, j), v(i - 1, j)})
        for i in range(l) for j in range(l)
    ]
    plaqs = [
        PauliOperator.from_support(n, "Z", {h(i, j), h(i + 1, j), v(i, j), v(i, j + 1)})
        for i in range(l) for j in range(l)
    ]
    stabs = _independent(stars) + _independent(plaqs)
    lx = (
        PauliOperator.from_support(n, "X", [h(i, 0) for i in range(l)]),
        PauliOperator.from_support(n, "X", [v(0, j) for j in range(l)]),
    )
    lz = (
        PauliOperator.from_support(n, "Z", [h(0, j) for j in range(l)]),
        PauliOperator.from_support(n, "Z", [v(i, 0) for i in range(l)]),
    )
    return StabiliserCode(n, 2, stabs, lx, lz, f"toric({l})").validate()


def toric_edge(l: int, kind: str, i: int, j: int) -> int:
    """Qubit index of edge ``h(i, j)`` or ``v(i, j)`` in :func:`build_toric`."""
    base = 0 if kind == "h" else l * l
    return base + (i % l) * l + (j % l)


@dataclass(frozen=True)
class _Path:
    """One axis of a product complex."""

    length: int
    open: bool

    @property
    def vertices(self) -> int:
        return self.length - 1 if self.open else self.length

    @property
    def edges(self) -> int:
        return self.length if self.open else self.length - 1

    def edge_ends(self, e: int) -> List[int]:
        ends = [e - 1, e] if self.open else [e, e + 1]
        return [u for u in ends if 0 <= u < self.vertices]

    def count(self, kind: int) -> int:
        return self.edges if kind else self.vertices


@dataclass(frozen=True)
class ProductLattice:
    """Cells of a product of paths; a cell is ((kind, index) per axis)."""

    axes: Tuple[_Path, ...]
    qubits: Tuple[Tuple[Tuple[int, int], ...], ...] = field(default=())

    @classmethod
    def build(cls, axes: Sequence[_Path]) -> "ProductLattice":
        lat = cls(tuple(axes))
        object.__setattr__(lat, "qubits", tuple(lat.cells(1)))
        return lat

    def cells(self, dim: int):
        out = []
        # Ordered by the axis carrying the edge, then by coordinates.
        for kinds in sorted(
            itertools.product((0, 1), repeat=len(self.axes)),
            key=lambda ks: [-k for k in ks],
        ):
            if sum(kinds) != dim:
                continue
            ranges = [range(ax.count(kd)) for ax, kd in zip(self.axes, kinds)]
            for idx in itertools.product(*ranges):
                out.append(tuple(zip(kinds, idx)))
        return out

    def boundary(self, cell) -> List[tuple]:
        out = []
        for a, (kind, idx) in enumerate(cell):
            if kind == 1:
                for u in self.axes[a].edge_ends(idx):
                    out.append(cell[:a] + ((0, u),) + cell[a + 1:])
        return out

    @property
    def index(self) -> Dict[tuple, int]:
        return {c: i for i, c in enumerate(self.qubits)}


def _product_code(axes: Sequence[_Path], label: str) -> Tuple[StabiliserCode, ProductLattice]:
    lat = ProductLattice.build(axes)
    idx = lat.index
    n = len(lat.qubits)
    vertex_stars: Dict[tuple, set] = {}
    for q, cell in enumerate(lat.qubits):
        for vtx in lat.boundary(cell):
            vertex_stars.setdefault(vtx, set()).add(q)
    xs = [PauliOperator.from_support(n, "X", vertex_stars.get(vtx, ())) for vtx in lat.cells(0)]
    zs = [
        PauliOperator.from_support(n, "Z", [idx[e] for e in lat.boundary(f)])
        for f in lat.cells(2)
    ]
    xs = [p for p in xs if not p.is_identity()]
    stabs = _independent(xs) + _independent(zs)
    # String along the open axis (axis 0) through vertex 0 of the others;
    # sheet of axis-0 edges with index 0.
    zbar = [
        idx[c] for c in lat.qubits
        if c[0][0] == 1 and all(kind == 0 and i == 0 for kind, i in c[1:])
    ]
    xbar = [idx[c] for c in lat.qubits if c[0] == (1, 0)]
    code = StabiliserCode(
        n,
        1,
        stabs,
        (PauliOperator.from_support(n, "X", xbar),),
        (PauliOperator.from_support(n, "Z", zbar),),
        label,
    )
    if code.n - len(stabs) != 1:
        raise SizeError(f"{label}: lattice does not encode one qubit")
    return code.validate(), lat


def build_surface2d(l: int) -> StabiliserCode:
    """Planar surface code: Z-strings run horizontally (rough left/right), d_X = d_Z = l."""
    if l < 2:
        raise SizeError("surface code needs l >= 2")
    return _product_code([_Path(l, True), _Path(l, False)], f"surface2d({l})")[0]


def surface2d_lattice(l: int) -> ProductLattice:
    return ProductLattice.build([_Path(l, True), _Path(l, False)])


def build_surface3d(lx: int, ly: int, lz: int) -> StabiliserCode:
    """3D surface code on an lx×ly×lz prism.

    The logical Z is a string of length ``lx`` and the logical X a sheet of
    area ``ly*lz``. With ``lz == 1`` the cell structure (and qubit order) is
    that of :func:`build_surface2d`.
    """
    sizes = (lx, ly, lz)
    if min(sizes) < 1 or sum(s >= 2 for s in sizes) < 2 or lx < 2:
        raise SizeError("surface3d needs all sizes >= 1, lx >= 2 and at least two sizes >= 2")
    return _product_code([_Path(lx, True), _Path(ly, False), _Path(lz, False)], f"surface3d({lx},{ly},{lz})")[0]


def surface3d_lattice(lx: int, ly: int, lz: int) -> ProductLattice:
    return ProductLattice.build([_Path(lx, True), _Path(ly, False), _Path(lz, False)])


# concatenation ------------------------------------------------------------

def lift_pauli(p: PauliOperator, inner: StabiliserCode) -> PauliOperator:
    """Replace each single-qubit factor of ``p`` by the inner logical on that block."""
    if inner.k != 1:
        raise UnsupportedError("inner code must encode one qubit")
    m = inner.n
    N = p.n * m
    lx = inner.logical_x[0]
    lz = inner.logical_z[0]
    ly = multiply(lx, lz)
    ly = PauliOperator(ly.n, ly.x, ly.z, ly.phase + 1)
    acc = PauliOperator(N, 0, 0, p.phase)
    for b in range(p.n):
        letter = p.letter(b)
        if letter == "I":
            continue
        rep = {"X": lx, "Y": ly, "Z": lz}[letter]
        acc = multiply(acc, rep.embed(N, b * m))
    return acc


def concatenate(outer: StabiliserCode, inner: StabiliserCode) -> StabiliserCode:
    """Encode every physical qubit of ``outer`` into a block of ``inner``.

    Qubit ``b*inner.n + j`` is qubit ``j`` of block ``b``. Stabiliser order:
    inner stabilisers block by block, then the lifted outer stabilisers.
    """
    if inner.k != 1:
        raise UnsupportedError("concatenation needs an inner code with k = 1")
    N = outer.n * inner.n
    stabs = []
    for b in range(outer.n):
        stabs.extend(s.embed(N, b * inner.n) for s in inner.stabilisers)
    stabs.extend(lift_pauli(s, inner) for s in outer.stabilisers)
    code = StabiliserCode(
        N,
        outer.k,
        stabs,
        tuple(lift_pauli(p, inner) for p in outer.logical_x),
        tuple(lift_pauli(p, inner) for p in outer.logical_z),
        f"{outer.label}∘{inner.label}",
    )
    return code.validate()


# families ------------------------------------------------------------------

FAMILY_KINDS = ("toric", "surface2d", "surface3d", "steane_concat", "rm_concat", "alternating_concat")


@dataclass
class CodeFamily:
    name: str
    kind: str
    index_domain: List[int]
    builder: Callable[[int], StabiliserCode]
    metadata: dict = field(default_factory=dict)
    levels: Optional[Callable[[int], List[StabiliserCode]]] = None
    _cache: Dict[int, StabiliserCode] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def instantiate(self, l: int) -> StabiliserCode:
        if l not in self.index_domain:
            raise SizeError(f"{self.name}: size {l} outside index domain {self.index_domain}")
        hit = self._cache.get(l)
        if hit is not None:
            return hit
        code = self.builder(l)
        with self._lock:
            return self._cache.setdefault(l, code)

    def level_codes(self, l: int) -> List[StabiliserCode]:
        """Top-to-bottom list of the codes nested at size l (concatenated families only)."""
        if self.levels is None:
            raise UnsupportedError(f"{self.name} is not a concatenated family")
        return self.levels(l)


def concatenate_levels(levels: Sequence[StabiliserCode]) -> StabiliserCode:
    """``levels[0]`` is outermost; each further code encodes the qubits of the previous."""
    code = levels[0]
    for nxt in levels[1:]:
        code = concatenate(code, nxt)
    return code


def _alternating_levels(l: int) -> List[StabiliserCode]:
    return [build_reed_muller() if i % 2 == 0 else build_steane() for i in range(l)]


def make_family(kind: str, **params) -> CodeFamily:
    kind = kind.replace("-", "_")
    if kind == "toric":
        dom = params.get("sizes", list(range(2, 7)))
        return CodeFamily("toric", kind, list(dom), build_toric, {"dimension": 2, "kind": "topological"})
    if kind == "surface2d":
        dom = params.get("sizes", list(range(2, 7)))
        return CodeFamily("surface2d", kind, list(dom), build_surface2d, {"dimension": 2, "kind": "topological"})
    if kind == "surface3d":
        shape = params.get("shape", "cubic")
        dom = params.get("sizes", [2, 3, 4])
        if shape == "cubic":
            builder = lambda l: build_surface3d(l, l, l)
        elif shape == "slab":
            depth = int(params.get("depth", 1))
            builder = lambda l: build_surface3d(l, l, depth)
        else:
            raise ConfigurationError(f"unknown surface3d shape {shape!r}")
        return CodeFamily(f"surface3d-{shape}", kind, list(dom), builder, {"dimension": 3, "kind": "topological", "shape": shape})
    if kind in ("steane_concat", "rm_concat"):
        base = build_steane if kind == "steane_concat" else build_reed_muller
        dom = params.get("sizes", [1, 2])
        levels = lambda l: [base() for _ in range(l)]
        return CodeFamily(
            kind.replace("_", "-"), kind, list(dom), lambda l: _relabel(concatenate_levels(levels(l)), f"{kind}({l})"),
            {"kind": "concatenated"}, levels,
        )
    if kind == "alternating_concat":
        dom = params.get("sizes", [1, 2])
        return CodeFamily(
            "alternating-concat", kind, list(dom),
            lambda l: _relabel(concatenate_levels(_alternating_levels(l)), f"alternating({l})"),
            {"kind": "concatenated", "odd_levels": "reed-muller"}, _alternating_levels,
        )
    raise ConfigurationError(f"unknown family kind {kind!r}")


def _relabel(code: StabiliserCode, label: str) -> StabiliserCode:
    return StabiliserCode(code.n, code.k, code.stabilisers, code.logical_x, code.logical_z, label)


def canonical_stabiliser_basis(code: StabiliserCode) -> List[int]:
    """Reduced echelon form of the stabiliser group (phase-free); equal iff same group."""
    return gf2.reduce_basis(s.symplectic for s in code.stabilisers)


CODE_BUILDERS: Dict[str, Callable[[], StabiliserCode]] = {
    "steane": build_steane,
    "reed-muller": build_reed_muller,
    "trivial": build_trivial,
}


def code_from_selector(selector: str) -> StabiliserCode:
    """Resolve names like ``steane``, ``toric:3``, ``surface3d:2,2,2``, ``steane-concat:2``."""
    name, _, arg = selector.partition(":")
    name = name.strip().lower().replace("_", "-")
    if name in ("rm", "reedmuller"):
        name = "reed-muller"
    if name in CODE_BUILDERS and not arg:
        return CODE_BUILDERS[name]()
    try:
        nums = [int(t) for t in arg.split(",")] if arg else []
    except ValueError as exc:
        raise ConfigurationError(f"bad size list in {selector!r}") from exc
    if name == "toric" and len(nums) == 1:
        return build_toric(nums[0])
    if name == "surface2d" and len(nums) == 1:
        return build_surface2d(nums[0])
    if name == "surface3d" and len(nums) in (1, 3):
        return build_surface3d(*(nums * 3 if len(nums) == 1 else nums))
    if name in ("steane-concat", "rm-concat", "alternating-concat", "alternating") and len(nums) == 1:
        kind = {"alternating": "alternating_concat"}.get(name, name.replace("-", "_"))
        return make_family(kind, sizes=[nums[0]]).instantiate(nums[0])
    if name == "repetition" and len(nums) == 1:
        return build_repetition(nums[0])
    raise ConfigurationError(f"unknown code selector {selector!r}")
