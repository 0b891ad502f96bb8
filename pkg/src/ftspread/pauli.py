"""Exact n-qubit Pauli algebra and Clifford maps.

A :class:`PauliOperator` is ``i**phase * sigma_1 ⊗ ... ⊗ sigma_n`` with each
``sigma`` in {I, X, Y, Z}, stored as two int bitsets (bit ``j`` is qubit ``j``,
0-based). Text I/O is 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, PauliParseError

_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {v: k for k, v in _LETTER.items()}


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("a Pauli operator needs at least one qubit")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full:
            raise DimensionError(f"bits set outside {self.n} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOperator":
        bx, bz = _BITS[letter]
        return cls(n, bx << qubit, bz << qubit)

    @classmethod
    def from_support(cls, n: int, letter: str, qubits: Iterable[int]) -> "PauliOperator":
        """Same letter on every listed (0-based) qubit."""
        m = 0
        for q in qubits:
            m |= 1 << q
        bx, bz = _BITS[letter]
        return cls(n, m if bx else 0, m if bz else 0)

    @classmethod
    def from_symplectic(cls, n: int, v: int, phase: int = 0) -> "PauliOperator":
        full = (1 << n) - 1
        return cls(n, v & full, v >> n, phase)

    @classmethod
    def from_arrays(cls, x_bits, z_bits, phase: int = 0) -> "PauliOperator":
        x_bits = np.asarray(x_bits, dtype=np.uint8)
        z_bits = np.asarray(z_bits, dtype=np.uint8)
        if x_bits.shape != z_bits.shape:
            raise DimensionError("x and z parts differ in length")
        return cls(len(x_bits), _pack(x_bits), _pack(z_bits), phase)

    # views --------------------------------------------------------------

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def symplectic(self) -> int:
        """``x | z << n``; the phase-free vector used by the GF(2) routines."""
        return self.x | (self.z << self.n)

    @property
    def x_bits(self) -> np.ndarray:
        return _unpack(self.x, self.n)

    @property
    def z_bits(self) -> np.ndarray:
        return _unpack(self.z, self.n)

    def letter(self, qubit: int) -> str:
        return _LETTER[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def is_x_type(self) -> bool:
        return self.z == 0

    def is_z_type(self) -> bool:
        return self.x == 0

    def without_phase(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z)

    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def __str__(self) -> str:
        return pauli_to_string(self)

    def __repr__(self) -> str:
        return f"PauliOperator({pauli_to_string(self)!r})"

    def embed(self, n: int, offset: int) -> "PauliOperator":
        """Place this operator on qubits ``offset .. offset+self.n-1`` of an n-qubit register."""
        if offset + self.n > n:
            raise DimensionError("embedding does not fit")
        return PauliOperator(n, self.x << offset, self.z << offset, self.phase)

    def restrict(self, offset: int, size: int) -> "PauliOperator":
        m = (1 << size) - 1
        return PauliOperator(size, (self.x >> offset) & m, (self.z >> offset) & m)


def _pack(bits: np.ndarray) -> int:
    v = 0
    for i in np.flatnonzero(bits):
        v |= 1 << int(i)
    return v


def _unpack(v: int, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.uint8)
    i = 0
    while v:
        if v & 1:
            out[i] = 1
        v >>= 1
        i += 1
    return out


def _check_n(a: PauliOperator, b: PauliOperator):
    if a.n != b.n:
        raise DimensionError(f"qubit counts differ: {a.n} vs {b.n}")


def weight(p: PauliOperator) -> int:
    return (p.x | p.z).bit_count()


def product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power of i picked up by sigma(x1,z1) * sigma(x2,z2), letter by letter."""
    xo1, zo1 = x1 & ~z1, z1 & ~x1
    y1 = x1 & z1
    xo2, zo2 = x2 & ~z2, z2 & ~x2
    y2 = x2 & z2
    # XY=iZ, YZ=iX, ZX=iY; the reversed orders give -i.
    plus = (xo1 & y2) | (y1 & zo2) | (zo1 & xo2)
    minus = (xo1 & zo2) | (y1 & xo2) | (zo1 & y2)
    return (plus.bit_count() - minus.bit_count()) % 4


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    _check_n(a, b)
    ph = a.phase + b.phase + product_phase(a.x, a.z, b.x, b.z)
    return PauliOperator(a.n, a.x ^ b.x, a.z ^ b.z, ph)


def product(ops: Iterable[PauliOperator], n: Optional[int] = None) -> PauliOperator:
    acc = None
    for p in ops:
        acc = p if acc is None else multiply(acc, p)
    if acc is None:
        if n is None:
            raise DimensionError("empty product needs an explicit qubit count")
        return PauliOperator.identity(n)
    return acc


def symplectic_inner(a: PauliOperator, b: PauliOperator) -> int:
    return ((a.x & b.z) ^ (a.z & b.x)).bit_count() & 1


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    _check_n(a, b)
    return symplectic_inner(a, b) == 0


# text I/O ---------------------------------------------------------------

_DENSE = re.compile(r"[IXYZ]+")
_SPARSE_TOKEN = re.compile(r"([IXYZ])(\d+)")


def pauli_from_string(s: str, n: Optional[int] = None) -> PauliOperator:
    """Parse dense (``-iXYZI``) or sparse (``X1 Z3 Y7``, ``X1X2``) notation.

    Sparse form needs ``n`` unless it can be inferred, in which case the
    largest index mentioned is used.
    """
    text = s.strip()
    pos = len(s) - len(s.lstrip())
    phase = 0
    if text[:1] in "+-" and text:
        if text[0] == "-":
            phase = 2
        text, pos = text[1:], pos + 1
    if text[:1] == "i":
        phase += 1
        text, pos = text[1:], pos + 1
    if not text:
        raise PauliParseError("empty Pauli string", pos)
    if not any(ch.isdigit() for ch in text):
        m = _DENSE.fullmatch(text)
        if m is None:
            bad = next(i for i, ch in enumerate(text) if ch not in "IXYZ")
            raise PauliParseError(f"unexpected character {text[bad]!r}", pos + bad)
        if text == "I" and n is not None:
            # Sparse form of the identity.
            return PauliOperator(n, 0, 0, phase)
        if n is not None and n != len(text):
            raise PauliParseError(f"dense string has {len(text)} qubits, expected {n}", pos)
        x = z = 0
        for j, ch in enumerate(text):
            bx, bz = _BITS[ch]
            x |= bx << j
            z |= bz << j
        return PauliOperator(len(text), x, z, phase)

    x = z = 0
    seen = set()
    i = 0
    top = 0
    while i < len(text):
        if text[i].isspace() or text[i] == "*":
            i += 1
            continue
        m = _SPARSE_TOKEN.match(text, i)
        if m is None:
            raise PauliParseError(f"expected <letter><index> at {text[i:i + 6]!r}", pos + i)
        q = int(m.group(2))
        if q < 1:
            raise PauliParseError("qubit indices are 1-based", pos + m.start(2))
        if q in seen:
            raise PauliParseError(f"qubit {q} listed twice", pos + m.start(2))
        seen.add(q)
        top = max(top, q)
        bx, bz = _BITS[m.group(1)]
        x |= bx << (q - 1)
        z |= bz << (q - 1)
        i = m.end()
    if n is None:
        n = top
    if top > n:
        raise PauliParseError(f"qubit {top} exceeds register size {n}", pos)
    return PauliOperator(n, x, z, phase)


def pauli_to_string(p: PauliOperator, sparse: bool = False) -> str:
    prefix = {0: "", 1: "i", 2: "-", 3: "-i"}[p.phase]
    if sparse:
        body = "".join(f"{p.letter(q)}{q + 1}" for q in range(p.n) if (p.support >> q) & 1)
        return prefix + (body or "I")
    return prefix + "".join(p.letter(q) for q in range(p.n))


# Clifford maps ----------------------------------------------------------

@dataclass(frozen=True)
class CliffordMap:
    """Clifford unitary stored by its action on the generators.

    ``x_images[j]`` is ``U X_j U†`` and ``z_images[j]`` is ``U Z_j U†``; both
    carry their phases, so the map is exact up to a global phase.
    """

    n: int
    x_images: Tuple[PauliOperator, ...]
    z_images: Tuple[PauliOperator, ...]

    def __post_init__(self):
        if len(self.x_images) != self.n or len(self.z_images) != self.n:
            raise DimensionError("need one image per generator")
        for p in self.x_images + self.z_images:
            if p.n != self.n:
                raise DimensionError("image acts on the wrong number of qubits")

    @classmethod
    def identity(cls, n: int) -> "CliffordMap":
        return cls(
            n,
            tuple(PauliOperator.single(n, j, "X") for j in range(n)),
            tuple(PauliOperator.single(n, j, "Z") for j in range(n)),
        )

    @classmethod
    def from_images(cls, n: int, x_images, z_images, check: bool = True) -> "CliffordMap":
        m = cls(n, tuple(x_images), tuple(z_images))
        if check and not m.is_symplectic():
            raise ValueError("images do not preserve commutation relations")
        return m

    @property
    def symplectic(self) -> np.ndarray:
        """2n×2n matrix whose column ``j`` is the image of generator ``j`` (X's first)."""
        cols = [p.symplectic for p in self.x_images + self.z_images]
        out = np.zeros((2 * self.n, 2 * self.n), dtype=np.uint8)
        for j, v in enumerate(cols):
            for i in range(2 * self.n):
                out[i, j] = (v >> i) & 1
        return out

    @property
    def phases(self) -> np.ndarray:
        return np.array([p.phase for p in self.x_images + self.z_images], dtype=np.int64)

    def is_symplectic(self) -> bool:
        gens = self.x_images + self.z_images
        n = self.n
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                expected = 1 if j == i + n else 0
                if symplectic_inner(gens[i], gens[j]) != expected:
                    return False
        return all(g.is_hermitian() for g in gens)

    def conjugate(self, p: PauliOperator) -> PauliOperator:
        return conjugate(self, p)

    def then(self, other: "CliffordMap") -> "CliffordMap":
        """``other ∘ self``: apply this map first."""
        return compose(other, self)

    def inverse(self) -> "CliffordMap":
        n = self.n
        mat = self.symplectic.astype(np.int64)
        # Symplectic inverse: Ω Mᵀ Ω with Ω = [[0, I], [I, 0]] over GF(2).
        omega = np.zeros((2 * n, 2 * n), dtype=np.int64)
        omega[:n, n:] = np.eye(n, dtype=np.int64)
        omega[n:, :n] = np.eye(n, dtype=np.int64)
        inv = (omega @ mat.T @ omega) % 2
        xs, zs = [], []
        for j in range(2 * n):
            v = 0
            for i in range(2 * n):
                if inv[i, j]:
                    v |= 1 << i
            q = _hermitian(PauliOperator.from_symplectic(n, v))
            target = PauliOperator.single(n, j % n, "X" if j < n else "Z")
            got = conjugate(self, q)
            if got.phase != target.phase:
                q = -q
            (xs if j < n else zs).append(q)
        return CliffordMap(n, tuple(xs), tuple(zs))

    def permuted(self, n: int, qubits: Sequence[int]) -> "CliffordMap":
        """Embed this map into an n-qubit register acting on ``qubits``."""
        if len(qubits) != self.n:
            raise DimensionError("qubit list length must match the map")

        def lift(p: PauliOperator) -> PauliOperator:
            x = z = 0
            for j, q in enumerate(qubits):
                x |= ((p.x >> j) & 1) << q
                z |= ((p.z >> j) & 1) << q
            return PauliOperator(n, x, z, p.phase)

        base = CliffordMap.identity(n)
        xs, zs = list(base.x_images), list(base.z_images)
        for j, q in enumerate(qubits):
            xs[q] = lift(self.x_images[j])
            zs[q] = lift(self.z_images[j])
        return CliffordMap(n, tuple(xs), tuple(zs))


def _hermitian(p: PauliOperator) -> PauliOperator:
    return PauliOperator(p.n, p.x, p.z, 0)


def conjugate(m: CliffordMap, p: PauliOperator) -> PauliOperator:
    """Return ``U p U†``."""
    if m.n != p.n:
        raise DimensionError(f"map acts on {m.n} qubits, operator on {p.n}")
    # sigma-form -> i^{|x&z|} X^x Z^z, then push each factor through.
    acc = PauliOperator(p.n, 0, 0, p.phase + (p.x & p.z).bit_count())
    x, z = p.x, p.z
    j = 0
    while x or z:
        if x & 1:
            acc = multiply(acc, m.x_images[j])
        if z & 1:
            acc = multiply(acc, m.z_images[j])
        x >>= 1
        z >>= 1
        j += 1
    return acc


def compose(second: CliffordMap, first: CliffordMap) -> CliffordMap:
    """``second ∘ first``."""
    if second.n != first.n:
        raise DimensionError("maps act on different registers")
    return CliffordMap(
        first.n,
        tuple(conjugate(second, p) for p in first.x_images),
        tuple(conjugate(second, p) for p in first.z_images),
    )


# Named gates. Images in the {I,X,Y,Z} basis with Hermitian phases.
def _gate_images(name: str) -> Tuple[List[str], List[str]]:
    table = {
        "I": (["X"], ["Z"]),
        "X": (["X"], ["-Z"]),
        "Y": (["-X"], ["-Z"]),
        "Z": (["-X"], ["Z"]),
        "H": (["Z"], ["X"]),
        "S": (["Y"], ["Z"]),
        "SDG": (["-Y"], ["Z"]),
        "SX": (["X"], ["-Y"]),
        "CNOT": (["XX", "IX"], ["ZI", "ZZ"]),
        "CZ": (["XZ", "ZX"], ["ZI", "IZ"]),
        "SWAP": (["IX", "XI"], ["IZ", "ZI"]),
    }
    if name not in table:
        raise KeyError(name)
    return table[name]


CLIFFORD_GATES = ("I", "X", "Y", "Z", "H", "S", "SDG", "SX", "CNOT", "CZ", "SWAP")
GATE_ARITY = {g: (2 if g in ("CNOT", "CZ", "SWAP") else 1) for g in CLIFFORD_GATES}


def gate_map(name: str, n: int, targets: Sequence[int]) -> CliffordMap:
    """CliffordMap of a named gate on 0-based ``targets`` of an n-qubit register."""
    xs, zs = _gate_images(name.upper())
    k = len(xs)
    if len(targets) != k:
        raise DimensionError(f"{name} acts on {k} qubit(s), got {len(targets)}")
    if len(set(targets)) != k:
        raise DimensionError(f"{name} targets must be distinct")
    local = CliffordMap(
        k,
        tuple(pauli_from_string(s) for s in xs),
        tuple(pauli_from_string(s) for s in zs),
    )
    return local.permuted(n, list(targets))


def apply_gate(p: PauliOperator, name: str, targets: Sequence[int]) -> PauliOperator:
    """Conjugate ``p`` by one gate without building the full n-qubit map."""
    xs, zs = _gate_images(name.upper())
    # Strip the local part, push it through, multiply back in.
    loc_mask = 0
    for t in targets:
        loc_mask |= 1 << t
    rest = PauliOperator(p.n, p.x & ~loc_mask, p.z & ~loc_mask, 0)
    local = PauliOperator(p.n, p.x & loc_mask, p.z & loc_mask, 0)
    acc = PauliOperator(p.n, 0, 0, p.phase + (local.x & local.z).bit_count())
    for j, t in enumerate(targets):
        if (local.x >> t) & 1:
            acc = multiply(acc, _lift_local(xs[j], p.n, targets))
        if (local.z >> t) & 1:
            acc = multiply(acc, _lift_local(zs[j], p.n, targets))
    # rest commutes past the local part and is untouched by the gate.
    return PauliOperator(p.n, acc.x ^ rest.x, acc.z ^ rest.z, acc.phase)


_LOCAL_CACHE: Dict[Tuple[str, int, Tuple[int, ...]], PauliOperator] = {}


def _lift_local(s: str, n: int, targets: Sequence[int]) -> PauliOperator:
    key = (s, n, tuple(targets))
    hit = _LOCAL_CACHE.get(key)
    if hit is None:
        loc = pauli_from_string(s)
        x = z = 0
        for j, t in enumerate(targets):
            x |= ((loc.x >> j) & 1) << t
            z |= ((loc.z >> j) & 1) << t
        hit = PauliOperator(n, x, z, loc.phase)
        if len(_LOCAL_CACHE) < 100_000:
            _LOCAL_CACHE[key] = hit
    return hit


def all_paulis(n: int) -> Iterable[PauliOperator]:
    """Every phase-free n-qubit Pauli, identity first."""
    for v in range(4 ** n):
        yield PauliOperator.from_symplectic(n, v)
