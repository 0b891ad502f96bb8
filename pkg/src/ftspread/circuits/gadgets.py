"""Teleportation and injection gadgets, the Steane to Reed-Muller switch and the surface layer split."""

from __future__ import annotations

import itertools
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import gf2
from ..codes import StabiliserCode, build_reed_muller, build_steane, build_surface3d, surface3d_lattice
from ..errors import DerivationError, UnsupportedError
from ..pauli import CliffordMap, PauliOperator, compose, conjugate, gate_map, multiply
from .circuit import Circuit
from .dense import DenseState
from .verify import Gadget, check_clifford_action, lift_logical, logical_map, logical_state, logical_t

GADGET_LABELS = ("I", "H", "S", "T")


def _require_css_k1(code: StabiliserCode):
    if code.k != 1:
        raise UnsupportedError(f"{code.label}: gadgets need a single logical qubit")
    if not code.is_css:
        raise UnsupportedError(f"{code.label}: not CSS, so no transversal CNOT")


def block_code(code: StabiliserCode, blocks: int) -> StabiliserCode:
    """``blocks`` side-by-side copies of ``code`` as one code with k = blocks*code.k."""
    N = code.n * blocks
    emb = lambda ps, b: [p.embed(N, b * code.n) for p in ps]
    stabs, lx, lz = [], [], []
    for b in range(blocks):
        stabs += emb(code.stabilisers, b)
        lx += emb(code.logical_x, b)
        lz += emb(code.logical_z, b)
    return StabiliserCode(N, code.k * blocks, stabs, lx, lz, f"{code.label}^{blocks}")


def _two_qubit_logical(name: str) -> CliffordMap:
    return gate_map(name, 2, [0, 1])


def _transversal_pair(code: StabiliserCode, name: str, conj_second: Optional[str] = None) -> Circuit:
    n = code.n
    c = Circuit(2 * n)
    for q in range(n):
        if conj_second:
            c.gate(conj_second, n + q)
        c.gate(name, q, n + q)
        if conj_second:
            c.gate(conj_second, n + q)
    return c


def _acts_as(circ: Circuit, code: StabiliserCode, blocks: int, expected: CliffordMap) -> bool:
    bc = block_code(code, blocks)
    return check_clifford_action(circ.to_clifford_map(), bc, bc, expected).passed


def logical_cz(code: StabiliserCode) -> Circuit:
    """Logical CZ between blocks 1 and 2 (qubits 0..n-1 and n..2n-1).

    Transversal CZ is used when it acts as logical CZ. Otherwise the Z-logical
    parity of each block is collected onto a pivot qubit by CNOTs, the pivots
    are joined by CZ and the parities uncomputed; the result is diagonal and a
    function of the two logical Z's only, so it is exactly logical CZ.
    """
    _require_css_k1(code)
    trans = _transversal_pair(code, "CZ")
    if _acts_as(trans, code, 2, _two_qubit_logical("CZ")):
        return trans
    n = code.n
    supp = gf2.bits_of(code.logical_z[0].support)
    pivot = supp[0]
    c = Circuit(2 * n)
    gather = Circuit(2 * n)
    for off in (0, n):
        for q in supp[1:]:
            gather.gate("CNOT", off + q, off + pivot)
    c.extend(gather)
    c.gate("CZ", pivot, n + pivot)
    c.extend(gather.inverse())
    return c


def transversal_s_name(code: StabiliserCode) -> str:
    """Physical gate whose transversal application acts as logical S (S or its inverse)."""
    for name in ("S", "SDG"):
        circ = Circuit(code.n)
        for q in range(code.n):
            circ.gate(name, q)
        if check_clifford_action(circ.to_clifford_map(), code, code, logical_map("S")).passed:
            return name
    raise UnsupportedError(f"{code.label}: transversal S does not act as logical S")


def _readout(c: Circuit, code: StabiliserCode, offset: int, basis: str, prefix: str, label: str):
    """Qubitwise readout of one block plus a lookup decode of the logical outcome."""
    n = code.n
    labels = [f"{prefix}{q + 1}" for q in range(n)]
    for q in range(n):
        c.measure(basis, offset + q, labels[q])
    if basis == "X":
        checks = [s.x for s in code.x_stabilisers]
        logical = code.logical_x[0].x
    else:
        checks = [s.z for s in code.z_stabilisers]
        logical = code.logical_z[0].z
    checks = [checks[i] for i in gf2.independent_subset(checks)]
    c.decode(label, labels, checks, logical)


def _image(code: StabiliserCode, u: CliffordMap, letter: str) -> PauliOperator:
    """Physical representative of U L U^dagger for L = logical X or Z."""
    return lift_logical(code, conjugate(u, PauliOperator.single(1, 0, letter)))


def build_teleportation_gadget(code: StabiliserCode, u_label: str) -> Gadget:
    """Logical gate by teleportation onto a prepared ancilla.

    ``I`` and ``S`` use the full three-block form (Bell pair carrying U, Bell
    measurement, two corrections). ``H`` uses the one-bit form with the
    entangling gate conjugated by H on the ancilla, and needs that gate to be
    transversal. ``T`` uses a T|+> ancilla, a CNOT onto the data, a Z readout
    and an X·S correction.
    """
    _require_css_k1(code)
    u_label = u_label.upper()
    if u_label in ("I", "S"):
        return _knill(code, u_label)
    if u_label == "H":
        return _conjugated_h(code)
    if u_label == "T":
        return build_magic_injection(code)
    raise UnsupportedError(f"no gadget for U = {u_label}; choose from {GADGET_LABELS}")


def _knill(code: StabiliserCode, u_label: str) -> Gadget:
    n = code.n
    N = 3 * n
    u = logical_map(u_label)
    ux, uz = _image(code, u, "X"), _image(code, u, "Z")
    anc = [s.embed(N, n) for s in code.stabilisers] + [s.embed(N, 2 * n) for s in code.stabilisers]
    anc.append(multiply(code.logical_x[0].embed(N, n), ux.embed(N, 2 * n)))
    anc.append(multiply(code.logical_z[0].embed(N, n), uz.embed(N, 2 * n)))
    c = Circuit(N)
    for q in range(n):
        c.gate("CNOT", q, n + q)
    _readout(c, code, 0, "X", "mx", "lx")
    _readout(c, code, n, "Z", "mz", "lz")
    c.cpauli("lx", uz.embed(N, 2 * n))
    c.cpauli("lz", ux.embed(N, 2 * n))
    notes = ["ancilla blocks 2,3 hold a logical Bell pair with U applied to block 3"]
    return Gadget(f"teleport-{u_label}({code.label})", code, c, 2 * n, u_label, anc, None, notes)


def _conjugated_h(code: StabiliserCode) -> Gadget:
    n = code.n
    N = 2 * n
    c = Circuit(N)
    # Block 2 (ancilla) is the control of the conjugated CNOT, so H sits on block 2.
    gate = Circuit(N)
    for q in range(n):
        gate.gate("H", n + q)
        gate.gate("CNOT", n + q, q)
        gate.gate("H", n + q)
    expected = compose_two(gate_h_on(1), _cnot_21(), gate_h_on(1))
    if not _acts_as(gate, code, 2, expected):
        raise UnsupportedError(f"{code.label}: conjugated CNOT is not transversal; use coherent injection")
    c.extend(gate)
    _readout(c, code, 0, "Z", "mz", "lz")
    c.cpauli("lz", code.logical_z[0].embed(N, n))
    anc = [s.embed(N, n) for s in code.stabilisers] + [code.logical_z[0].embed(N, n)]
    return Gadget(f"teleport-H({code.label})", code, c, n, "H", anc, None, ["ancilla in logical |0> = H|+>"])


def gate_h_on(q: int) -> CliffordMap:
    return gate_map("H", 2, [q])


def _cnot_21() -> CliffordMap:
    return gate_map("CNOT", 2, [1, 0])


def compose_two(*maps: CliffordMap) -> CliffordMap:
    """Maps applied left to right."""
    out = maps[0]
    for m in maps[1:]:
        out = compose(m, out)
    return out


def build_coherent_injection(code: StabiliserCode) -> Gadget:
    """Logical H from an injected |+>: logical CZ, X readout of the data, X correction."""
    _require_css_k1(code)
    n = code.n
    N = 2 * n
    c = Circuit(N)
    c.extend(logical_cz(code))
    _readout(c, code, 0, "X", "mx", "lx")
    c.cpauli("lx", code.logical_x[0].embed(N, n))
    anc = [s.embed(N, n) for s in code.stabilisers] + [code.logical_x[0].embed(N, n)]
    return Gadget(f"coherent-inject({code.label})", code, c, n, "H", anc, None, ["ancilla in logical |+>"])


def magic_ancilla(code: StabiliserCode) -> DenseState:
    """Ideal logical T|+> as a dense state on one block."""
    return logical_t(code, logical_state(code, "X"))


def build_magic_injection(code: StabiliserCode) -> Gadget:
    _require_css_k1(code)
    n = code.n
    N = 2 * n
    c = Circuit(N)
    for q in range(n):
        c.gate("CNOT", n + q, q)
    _readout(c, code, 0, "Z", "mz", "lz")
    c.cpauli("lz", code.logical_x[0].embed(N, n))
    s_name = transversal_s_name(code)
    for q in range(n):
        c.if_gate("lz", s_name, n + q)
    return Gadget(
        f"magic-inject({code.label})", code, c, n, "T", [], magic_ancilla(code),
        [f"ancilla is the ideal logical T|+>; conditional logical S is transversal {s_name}"],
    )


# Steane <-> Reed-Muller switch ---------------------------------------------------

# Not a logical X: attaches X15 to Steane stabilisers, so no ancilla works.
INVALID_SWITCH_CONTROLS = (1, 5, 7)
SWITCH_CONTROLS = (5, 6, 7)


def steane_rm_switch_circuit(direction: str, controls: Sequence[int] = SWITCH_CONTROLS) -> Circuit:
    """Ten-CNOT conversion between Steane (qubits 1-7 plus an 8-qubit ancilla) and Reed-Muller.

    First CNOT(i -> i+7) for i = 1..7, then CNOT(i+7 -> 15) for i in
    ``controls``. The controls must form a weight-3 logical X of the Steane
    code, otherwise X15 is attached to Steane stabilisers and verification
    fails (see INVALID_SWITCH_CONTROLS).
    """
    to_rm = Circuit(15)
    for i in range(7):
        to_rm.gate("CNOT", i, i + 7)
    for i in controls:
        to_rm.gate("CNOT", i + 6, 14)
    if direction == "to_rm":
        return to_rm
    if direction == "to_steane":
        return to_rm.inverse()
    raise UnsupportedError("direction must be to_rm or to_steane")


def switch_ancilla_stabilisers(controls: Sequence[int] = SWITCH_CONTROLS) -> List[PauliOperator]:
    """Stabilisers (on 15 qubits, supported on 8-15) of the ancilla the switch needs.

    Pull the Reed-Muller group back through the switch and keep the elements
    that act on the Steane block only through Steane stabilisers.
    """
    rm = build_reed_muller()
    back = steane_rm_switch_circuit("to_steane", controls).to_clifford_map()
    # Steane stabilisers may be multiplied in: they are +1 on the data block.
    pulled = [conjugate(back, s) for s in rm.stabilisers]
    pulled += [s.embed(15, 0) for s in build_steane().stabilisers]
    low = (1 << 7) - 1
    basis: List[Tuple[int, int]] = []
    kernel: List[int] = []
    for j, g in enumerate(pulled):
        v, combo = (g.x & low) | ((g.z & low) << 7), 1 << j
        for bv, bc in basis:
            if v ^ bv < v:
                v, combo = v ^ bv, combo ^ bc
        if v:
            basis.append((v, combo))
            basis.sort(reverse=True)
        else:
            kernel.append(combo)
    out = []
    for combo in kernel:
        acc = PauliOperator.identity(15)
        for j in gf2.bits_of(combo):
            acc = multiply(acc, pulled[j])
        out.append(acc)
    keep = gf2.independent_subset([p.symplectic for p in out])
    return [out[i] for i in keep]


def steane_with_ancilla(controls: Sequence[int] = SWITCH_CONTROLS) -> StabiliserCode:
    """Steane on qubits 1-7 together with the derived ancilla on 8-15, as one 15-qubit code."""
    st = build_steane()
    anc = switch_ancilla_stabilisers(controls)
    stabs = [s.embed(15, 0) for s in st.stabilisers] + anc
    return StabiliserCode(
        15, 1, stabs, [st.logical_x[0].embed(15, 0)], [st.logical_z[0].embed(15, 0)], "steane+ancilla"
    ).validate()


# surface layer split ---------------------------------------------------------------

def _adjacency(l: int) -> Dict[int, set]:
    lat = surface3d_lattice(l, l, 2)
    idx = lat.index
    groups: List[List[int]] = []
    for face in lat.cells(2):
        groups.append([idx[e] for e in lat.boundary(face)])
    stars: Dict[tuple, List[int]] = {}
    for q, cell in enumerate(lat.qubits):
        for v in lat.boundary(cell):
            stars.setdefault(v, []).append(q)
    groups += list(stars.values())
    adj: Dict[int, set] = {q: set() for q in range(len(lat.qubits))}
    for g in groups:
        for a in g:
            adj[a].update(b for b in g if b != a)
    return adj


def _path(adj: Dict[int, set], a: int, b: int) -> List[int]:
    prev = {a: None}
    dq = deque([a])
    while dq:
        u = dq.popleft()
        if u == b:
            break
        for v in sorted(adj[u]):
            if v not in prev:
                prev[v] = u
                dq.append(v)
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def _nn_cnot(adj: Dict[int, set], a: int, b: int) -> List[Tuple[int, int]]:
    """CNOT(a -> b) as nearest-neighbour CNOTs via CNOT(a,c) = [CNOT(m,c) CNOT(a,m)]^2."""
    if b in adj[a]:
        return [(a, b)]
    p = _path(adj, a, b)
    m = p[len(p) // 2]
    first, second = _nn_cnot(adj, a, m), _nn_cnot(adj, m, b)
    return second + first + second + first


def _gf2_inv(a: np.ndarray) -> Optional[np.ndarray]:
    n = a.shape[0]
    aug = np.concatenate([a % 2, np.eye(n, dtype=np.uint8)], axis=1).astype(np.uint8)
    for col in range(n):
        hits = np.flatnonzero(aug[col:, col]) + col
        if len(hits) == 0:
            return None
        p = hits[0]
        aug[[col, p]] = aug[[p, col]]
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] ^= aug[col]
    return aug[:, n:]


def _eliminate(m: np.ndarray) -> List[Tuple[int, int]]:
    """CNOT list (control, target) in circuit order whose X action is ``m`` (columns are images)."""
    m = m.copy() % 2
    n = m.shape[0]
    ops = []
    for col in range(n):
        if not m[col, col]:
            p = col + int(np.flatnonzero(m[col:, col])[0])
            m[col] ^= m[p]
            ops.append((p, col))
        for r in range(n):
            if r != col and m[r, col]:
                m[r] ^= m[col]
                ops.append((col, r))
    # Row op "add row c to row t" is CNOT(c -> t); the recorded ops reduce m to I.
    return ops[::-1]


def _vec(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> q) & 1 for q in range(n)], dtype=np.uint8)


def layer_split_target(l: int, plus: Sequence[int]) -> StabiliserCode:
    """Thin code on the retained layer plus single-qubit stabilisers on the removed qubits."""
    lat3 = surface3d_lattice(l, l, 2)
    lat2 = surface3d_lattice(l, l, 1)
    code2 = build_surface3d(l, l, 1)
    idx3 = lat3.index
    place = [idx3[cell] for cell in lat2.qubits]
    N = len(lat3.qubits)

    def lift(p: PauliOperator) -> PauliOperator:
        x = sum(1 << place[q] for q in gf2.bits_of(p.x))
        z = sum(1 << place[q] for q in gf2.bits_of(p.z))
        return PauliOperator(N, x, z, p.phase)

    removed = [q for q in range(N) if q not in place]
    stabs = [lift(s) for s in code2.stabilisers]
    stabs += [PauliOperator.single(N, q, "X" if q in plus else "Z") for q in removed]
    return StabiliserCode(
        N, 1, stabs, [lift(code2.logical_x[0])], [lift(code2.logical_z[0])], f"surface3d({l},{l},1)+layer"
    ).validate()


def surface_layer_split(l: int = 2, budget: int = 400) -> Circuit:
    """Nearest-neighbour CNOT circuit taking surface3d(l,l,2) to surface3d(l,l,1) times a product layer.

    CNOT circuits act linearly on X-type vectors (and by the inverse transpose
    on Z-type ones), so it suffices to find an invertible M sending the X
    stabilisers and logical X of the thick code onto those of the target. M is
    assembled from matched bases, factored into CNOTs by elimination and
    routed onto lattice neighbours. The cheapest choice over the |+> qubits and
    basis matchings is kept.
    """
    if l != 2:
        raise UnsupportedError("layer split is derived for l = 2 only")
    src = build_surface3d(l, l, 2)
    N = src.n
    adj = _adjacency(l)
    lat3 = surface3d_lattice(l, l, 2)
    retained = {lat3.index[c] for c in surface3d_lattice(l, l, 1).qubits}
    removed = [q for q in range(N) if q not in retained]
    src_x = [s.x for s in src.x_stabilisers]
    n_plus = len(src_x) - len(build_surface3d(l, l, 1).x_stabilisers)
    best: Optional[List[Tuple[int, int]]] = None
    best_plus: Tuple[int, ...] = ()
    for plus in itertools.combinations(removed, n_plus):
        tgt = layer_split_target(l, plus)
        tgt_x = [s.x for s in tgt.x_stabilisers]
        for perm in itertools.permutations(range(len(tgt_x))):
            a_cols = src_x + [src.logical_x[0].x]
            b_cols = [tgt_x[i] for i in perm] + [tgt.logical_x[0].x]
            for q in range(N):
                e = 1 << q
                if gf2.rank(a_cols + [e]) > len(a_cols) and gf2.rank(b_cols + [e]) > len(b_cols):
                    a_cols.append(e)
                    b_cols.append(e)
            if len(a_cols) != N:
                continue
            A = np.array([_vec(v, N) for v in a_cols]).T
            B = np.array([_vec(v, N) for v in b_cols]).T
            inv = _gf2_inv(A)
            if inv is None:
                continue
            M = (B.astype(np.int64) @ inv.astype(np.int64)) % 2
            gates: List[Tuple[int, int]] = []
            for a, b in _eliminate(M.astype(np.uint8)):
                gates += _nn_cnot(adj, a, b)
            if best is None or len(gates) < len(best):
                best, best_plus = gates, plus
    if best is None or len(best) > budget:
        raise DerivationError(f"no layer-split circuit within {budget} nearest-neighbour CNOTs")
    circ = Circuit(N)
    for a, b in best:
        circ.gate("CNOT", a, b)
    circ.plus_qubits = best_plus
    return circ


def layer_split_code_out(circ: Circuit, l: int = 2) -> StabiliserCode:
    return layer_split_target(l, getattr(circ, "plus_qubits", ()))
