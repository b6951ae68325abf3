"""Residue model Q and its iota-isotropic subspaces.

Q has one line Q_i per even-degree factor of a generic characteristic
polynomial plus the line Q_0 coming from the lambda factor.  Phi acts on Q_i
by the leading coefficient of f_i(0)/t, the pairing is diagonal, and the
subspaces of interest are Lagrangians W whose lattice modification has the
prescribed nilpotent residue.  They are found twice: by a closed-form chain
construction and by scanning every Lagrangian of each block.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .errors import GenericityFailure, NotSpecial, RetriesExhausted
from .fields import PrimeField, QuadraticExtension
from .formal_local import LocalCharData, sample_generic_char
from .orbits import block_decompose, orbit_invariants
from .partitions import Partition, canon, fmt, is_special


@dataclass(frozen=True)
class ResidueBlock:
    kind: str
    parts: Partition  # the block of d_B
    coords: tuple  # coordinates of Q inside this block
    targets: tuple  # required rank drop for l = 1, 2, ...


@dataclass
class ResidueModel:
    d: Partition
    p: int
    seed: int
    degrees: tuple  # degree of each coordinate; Q_0 has degree 1
    phi: tuple
    gamma: tuple
    labels: tuple
    blocks: tuple
    chi: LocalCharData | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def F_geq(self, i: int) -> list[int]:
        return [u for u, e in enumerate(self.degrees) if e >= i]

    def F_leq(self, i: int) -> list[int]:
        return [u for u, e in enumerate(self.degrees) if e <= i]

    def F_eq(self, i: int) -> list[int]:
        return [u for u, e in enumerate(self.degrees) if e == i]

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(g * a * b for g, a, b in zip(self.gamma, x, y)) % self.p

    def block_of(self, u: int) -> int:
        return next(k for k, b in enumerate(self.blocks) if u in b.coords)


@dataclass(frozen=True)
class IsotropicSolution:
    basis: tuple  # reduced row echelon form, rows in Q coordinates
    signs: tuple = ()  # per block, per degree group: signs of w relative to its first entry
    links: tuple = ()  # per block: sign of each link ratio
    w: tuple = ()  # per block, per degree group: the vector w over the coordinates
    field: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)


def _rank_drop(block_parts: Partition, dual_parts: Sequence[int], l: int) -> int:
    rk = lambda parts: sum(max(x - l, 0) for x in parts)
    return rk(block_parts) - rk(dual_parts)


def _build_blocks(d: Partition, degrees: Sequence[int]) -> list[ResidueBlock]:
    """Attach coordinates of Q to the B2 and B3 blocks of d."""
    blocks = []
    pos = 0  # position in the dual partition
    even_pos = {}
    dual = [e for e in degrees]
    for i, e in enumerate(dual):
        if e % 2 == 0:
            even_pos[i] = len(even_pos)
    q0 = len(even_pos)
    for b in block_decompose(d).blocks:
        if b.kind == "B2":
            dparts = [b.parts[0] - 1, *b.parts[1:-1], b.parts[-1] + 1]
        elif b.kind == "B3":
            dparts = [x for x in (b.parts[0] - 1, *b.parts[1:]) if x > 0]
        else:
            dparts = list(b.parts)
        width = len(dparts)
        span = list(range(pos, pos + width))
        pos += width
        if b.kind in ("B1", "B1star"):
            continue
        coords = [even_pos[i] for i in span if dual[i] % 2 == 0]
        degs = [dual[i] for i in span if dual[i] % 2 == 0]
        if b.kind == "B3":
            coords.append(q0)
            dparts = dparts + [1]
            degs.append(1)
        top = max(list(b.parts) + degs) + 1
        targets = tuple(_rank_drop(b.parts, dparts, l) for l in range(1, top + 1))
        blocks.append(ResidueBlock(b.kind, b.parts, tuple(coords), targets))
    return blocks


def build_residue_model(d, p: int = 101, seed: int = 0, chi: LocalCharData | None = None) -> ResidueModel:
    """Residue space for a special type B partition from a sampled local char poly."""
    d = canon(d)
    if not is_special(d, "B"):
        raise NotSpecial(f"{fmt(d)} is not special of type B")
    if chi is None:
        chi = sample_generic_char(d, "B", p, seed=seed)
    units = chi.constant_units()
    degrees, phi, labels = [], [], []
    for i in chi.even_indices():
        degrees.append(chi.degrees[i])
        phi.append(units[i])
        labels.append(f"Q{len(labels) + 1}")
    phi0 = 1
    for c in units:
        phi0 = phi0 * c % p
    degrees.append(1)
    phi.append(phi0)
    labels.append("Q0")
    rng = random.Random(f"pairing:{seed}:{p}")
    gamma = tuple(rng.randrange(1, p) for _ in degrees)
    blocks = _build_blocks(d, chi.degrees)
    return ResidueModel(d, p, seed, tuple(degrees), tuple(phi), gamma, tuple(labels),
                        tuple(blocks), chi)


# ---------------------------------------------------------------- linear algebra mod p


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple:
    """Reduced row echelon form mod p with zero rows removed."""
    m = [[int(x) % p for x in r] for r in rows]
    out = []
    col = 0
    ncols = len(m[0]) if m else 0
    r = 0
    while r < len(m) and col < ncols:
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        col += 1
    out = [tuple(row) for row in m[:r]]
    return tuple(out)


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks mod p of a stack of matrices with shape (batch, rows, cols)."""
    a = np.array(mats, dtype=np.int32) % p
    nb, nr, nc = a.shape
    rank = np.zeros(nb, dtype=np.int64)
    if nr == 0 or nc == 0:
        return rank
    used = np.zeros((nb, nr), dtype=bool)
    inv_table = np.zeros(p, dtype=np.int32)
    inv_table[1:] = [pow(x, -1, p) for x in range(1, p)]
    everyone = np.arange(nb)
    for col in range(nc):
        cand = (a[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        piv = cand.argmax(axis=1)
        if has.all():
            sel, sub, pv = None, a, piv
        else:
            sel = np.flatnonzero(has)
            if not len(sel):
                continue
            sub, pv = a[sel], piv[sel]
        r = np.arange(len(pv))
        prow = sub[r, pv, :]
        prow = prow * inv_table[prow[:, col]][:, None] % p
        factors = sub[:, :, col].copy()
        factors[r, pv] = 0
        sub -= factors[:, :, None] * prow[:, None, :]
        sub %= p
        sub[r, pv, :] = prow
        if sel is None:
            used[everyone, piv] = True
            rank += 1
        else:
            a[sel] = sub
            used[sel, pv] = True
            rank[sel] += 1
    return rank


def rank_drops(W: np.ndarray, degs: Sequence[int], phi: Sequence[int], p: int,
               levels: Sequence[int]) -> np.ndarray:
    """Rank drop of the modified residue at each level l for a stack of W.

    W has shape (batch, k, D).  For level l the coordinates split into
    H (degree > l), E (degree == l) and L (degree < l); the drop equals
    rank [[W_L, 0, W_E], [0, W_H, -W_E Phi_E]] - k.
    Returns shape (batch, len(levels)).
    """
    nb, k, D = W.shape
    degs = np.asarray(degs)
    phi = np.asarray(phi, dtype=np.int64)
    out = np.zeros((nb, len(levels)), dtype=np.int64)
    for t, l in enumerate(levels):
        H = np.where(degs > l)[0]
        E = np.where(degs == l)[0]
        L = np.where(degs < l)[0]
        if not len(E):
            # block diagonal: the two ranks add
            out[:, t] = batch_rank(W[:, :, L], p) + batch_rank(W[:, :, H], p) - k
            continue
        big = np.zeros((nb, 2 * k, D), dtype=np.int64)
        big[:, :k, : len(L)] = W[:, :, L]
        big[:, k:, len(L): len(L) + len(H)] = W[:, :, H]
        big[:, :k, len(L) + len(H):] = W[:, :, E]
        big[:, k:, len(L) + len(H):] = -W[:, :, E] * phi[E][None, None, :]
        out[:, t] = batch_rank(big, p) - k
    return out


# ---------------------------------------------------------------- brute force


def _isotropic_vector(G: np.ndarray, V: list, p: int, roots: dict, rng: random.Random):
    """Nonzero isotropic vector in span(V), or None if there is none."""
    B = lambda x, y: int(x @ G @ y) % p
    k = len(V)
    if k == 1:
        return None
    if k == 2:
        cands = [np.array([1, y]) for y in range(p)] + [np.array([0, 1])]
        for c in cands:
            v = (c[0] * V[0] + c[1] * V[1]) % p
            if B(v, v) == 0:
                return v
        return None
    for _ in range(2000):
        c = [rng.randrange(p) for _ in range(k - 1)]
        x = sum(ci * vi for ci, vi in zip(c, V[:-1])) % p
        a, b, cc = B(V[-1], V[-1]), 2 * B(x, V[-1]) % p, B(x, x)
        if a == 0:
            if b:
                y = -cc * pow(b, -1, p) % p
            else:
                continue
        else:
            disc = (b * b - 4 * a * cc) % p
            r = roots.get(disc)
            if r is None:
                continue
            y = (-b + r) * pow(2 * a, -1, p) % p
        v = (x + y * V[-1]) % p
        if v.any():
            return v
    raise GenericityFailure("no isotropic vector found by random search")


def hyperbolic_basis(gamma: Sequence[int], p: int, seed: int = 0) -> np.ndarray | None:
    """Rows e_1..e_k, f_1..f_k with B(e_i, f_j) = delta_ij, all others zero.

    Returns None when the diagonal form sum gamma_u x_u^2 is not split.
    """
    D = len(gamma)
    if D % 2:
        return None
    G = np.diag(np.asarray(gamma, dtype=np.int64) % p)
    B = lambda x, y: int(x @ G @ y) % p
    roots = {x * x % p: x for x in range(p)}
    rng = random.Random(seed)
    V = [row for row in np.eye(D, dtype=np.int64)]
    es, fs = [], []
    while V:
        v = _isotropic_vector(G, V, p, roots, rng)
        if v is None:
            return None
        u = next(x for x in V if B(v, x))
        w = u * pow(B(v, u), -1, p) % p
        w = (w - (B(w, w) * pow(2, -1, p) % p) * v) % p
        es.append(v)
        fs.append(w)
        proj = [(x - B(x, w) * v - B(x, v) * w) % p for x in V]
        V = [np.array(r, dtype=np.int64) for r in rref(proj, p)]
    return np.array(es + fs, dtype=np.int64)


def _chart_minor_nonzero(rows: np.ndarray, k: int, J: int, p: int) -> np.ndarray:
    """Does each row basis lie in chart J (the J-swapped identity minor is invertible)?"""
    cols = [k + i if J >> i & 1 else i for i in range(k)]
    sub = rows[:, :, cols] % p
    if k > 4:
        return batch_rank(sub, p) == k
    # small integer minors: a float determinant is exact after rounding
    det = np.rint(np.linalg.det(sub.astype(np.float64))).astype(np.int64)
    return det % p != 0


def lagrangian_charts(k: int, p: int, chunk: int = 200_000):
    """Yield stacks of k x 2k row bases covering every Lagrangian of the
    hyperbolic form exactly once.

    Chart J swaps e_i and f_i for i in J; a point is kept only in the
    first chart that contains it.
    """
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    npar = len(pairs)
    total = p ** npar
    for J in range(2 ** k):
        for start in range(0, total, chunk):
            ids = np.arange(start, min(total, start + chunk), dtype=np.int64)
            digits = np.zeros((len(ids), npar), dtype=np.int64)
            rest = ids.copy()
            for t in range(npar):
                digits[:, t] = rest % p
                rest //= p
            A = np.zeros((len(ids), k, k), dtype=np.int64)
            for t, (i, j) in enumerate(pairs):
                A[:, i, j] = digits[:, t]
                A[:, j, i] = (-digits[:, t]) % p
            rows = np.zeros((len(ids), k, 2 * k), dtype=np.int64)
            rows[:, :, :k] = np.eye(k, dtype=np.int64)
            rows[:, :, k:] = A
            for i in range(k):
                if J >> i & 1:
                    rows[:, :, [i, k + i]] = rows[:, :, [k + i, i]]
            keep = np.ones(len(ids), dtype=bool)
            for earlier in range(J):
                keep &= ~_chart_minor_nonzero(rows, k, earlier, p)
            yield rows[keep]


def _block_bruteforce(m: ResidueModel, blk: ResidueBlock, chunk: int = 200_000) -> list[tuple]:
    """All W inside one block passing isotropy and the rank conditions (RREF, block coords)."""
    p = m.p
    gamma = [m.gamma[u] for u in blk.coords]
    degs = [m.degrees[u] for u in blk.coords]
    phi = [m.phi[u] for u in blk.coords]
    D = len(blk.coords)
    levels = list(range(1, len(blk.targets) + 1))
    want = np.array(blk.targets)
    if D % 2:
        W = np.zeros((1, 0, D), dtype=np.int64)
        ok = (rank_drops(W, degs, phi, p, levels) == want).all()
        return [()] if ok else []
    M = hyperbolic_basis(gamma, p, seed=m.seed)
    if M is None:
        return []
    k = D // 2
    found = set()
    # the most selective levels first, filtering as we go
    order = sorted(range(len(levels)), key=lambda t: -want[t])
    for rows in lagrangian_charts(k, p, chunk):
        W = rows @ M % p
        for t in order:
            if not len(W):
                break
            drops = rank_drops(W, degs, phi, p, [levels[t]])[:, 0]
            W = W[drops == want[t]]
        for w in W:
            found.add(rref(w.tolist(), p))
    return sorted(found)


# ---------------------------------------------------------------- structural


def degree_groups(degs: Sequence[int]) -> list[list[int]]:
    """Local indices grouped by degree, largest degree first."""
    out = []
    for e in sorted(set(degs), reverse=True):
        out.append([i for i, x in enumerate(degs) if x == e])
    return out


def chain_lengths(sizes: Sequence[int]) -> list[int]:
    """Number of Phi^{-a} w vectors in each degree group."""
    q = len(sizes)
    if q == 1:
        if sizes[0] % 2:
            raise GenericityFailure("single degree group of odd size")
        return [sizes[0] // 2]
    if sizes[0] % 2 == 0 or sizes[-1] % 2 == 0 or any(m % 2 for m in sizes[1:-1]):
        raise GenericityFailure(f"unexpected degree multiplicities {list(sizes)}")
    return [(sizes[0] - 1) // 2] + [m // 2 - 1 for m in sizes[1:-1]] + [(sizes[-1] - 1) // 2]


def _block_structural(m: ResidueModel, blk: ResidueBlock, F: PrimeField) -> list[dict]:
    """Closed-form iota-isotropic subspaces of one block over the field F."""
    gamma = [F.embed(m.gamma[u]) for u in blk.coords]
    degs = [m.degrees[u] for u in blk.coords]
    psi = [F.inv(F.embed(m.phi[u])) for u in blk.coords]
    D = len(blk.coords)
    if D == 1:
        return [{"rows": [], "signs": ((),), "links": (), "w": ()}]
    groups = degree_groups(degs)
    dls = chain_lengths([len(g) for g in groups])
    q = len(groups)

    def power(x, k):
        out = F.embed(1)
        base = x if k >= 0 else F.inv(x)
        for _ in range(abs(k)):
            out = F.mul(out, base)
        return out

    def moment(g, xs, k):
        acc = F.embed(0)
        for u, x in zip(g, xs):
            acc = F.add(acc, F.mul(F.mul(gamma[u], power(psi[u], k)), x))
        return acc

    # squares x_u = w_u^2 solving the moment equations, unique up to scale
    xs_all, roots_all = [], []
    for j, g in enumerate(groups):
        k0 = 2 if j == 0 else 1
        xs = []
        for u in g:
            prod_ = F.embed(1)
            for v in g:
                if v != u:
                    diff = F.sub(psi[u], psi[v])
                    if F.is_zero(diff):
                        raise GenericityFailure("repeated Phi eigenvalue inside a degree group")
                    prod_ = F.mul(prod_, diff)
            xs.append(F.inv(F.mul(F.mul(gamma[u], prod_), power(psi[u], k0))))
        base = F.inv(xs[0])
        xs = [F.mul(x, base) for x in xs]
        if not all(_is_fp_square(F, x) for x in xs):
            return []
        xs_all.append(xs)
        roots_all.append([_sqrt(F, x) for x in xs])
    ratios = []
    for j in range(q - 1):
        top = moment(groups[j], xs_all[j], 2 * dls[j] + 2)
        bottom = moment(groups[j + 1], xs_all[j + 1], 0)
        if F.is_zero(top) or F.is_zero(bottom):
            raise GenericityFailure("vanishing link coefficient")
        r2 = F.mul(F.sub(F.embed(0), bottom), F.inv(top))
        if not _is_fp_square(F, r2):
            return []
        ratios.append(_sqrt(F, r2))
    sols = []
    sign_sets = [list(product((1, -1), repeat=len(g) - 1)) for g in groups]
    for signs in product(*sign_sets):
        ws = []
        for j, g in enumerate(groups):
            vec = [F.embed(0)] * D
            for t, u in enumerate(g):
                r = roots_all[j][t]
                s = 1 if t == 0 else signs[j][t - 1]
                vec[u] = r if s == 1 else F.sub(F.embed(0), r)
            ws.append(vec)
        for lsigns in product((1, -1), repeat=q - 1):
            rows = []
            for j, g in enumerate(groups):
                for a in range(1, dls[j] + 1):
                    rows.append([F.mul(power(psi[u], a), ws[j][u]) for u in range(D)])
                if j < q - 1:
                    r = ratios[j] if lsigns[j] == 1 else F.sub(F.embed(0), ratios[j])
                    link = [F.add(F.mul(r, F.mul(power(psi[u], dls[j] + 1), ws[j][u])),
                                  ws[j + 1][u]) for u in range(D)]
                    rows.append(link)
            sols.append({"rows": rows, "signs": signs, "links": lsigns, "w": ws})
    return sols


def _is_fp_square(F: PrimeField, x) -> bool:
    if isinstance(F, QuadraticExtension):
        return True
    return F.is_square(x)


def _sqrt(F: PrimeField, x):
    if isinstance(F, QuadraticExtension):
        if x[1] != 0:
            raise GenericityFailure("square root of a non-base element")
        return F.sqrt(x[0])
    return F.sqrt(x)


def is_isotropic(m: ResidueModel, rows: Sequence[Sequence], F: PrimeField, coords: Sequence[int]) -> bool:
    for a in rows:
        for b in rows:
            acc = F.embed(0)
            for t, u in enumerate(coords):
                acc = F.add(acc, F.mul(F.embed(m.gamma[u]), F.mul(a[t], b[t])))
            if not F.is_zero(acc):
                return False
    return True


# ---------------------------------------------------------------- public API


def _embed_rows(rows: Sequence[Sequence[int]], coords: Sequence[int], dim: int) -> list[list[int]]:
    out = []
    for r in rows:
        full = [0] * dim
        for t, u in enumerate(coords):
            full[u] = r[t]
        out.append(full)
    return out


def enumerate_block(m: ResidueModel, k: int, method: str, field_: str = "Fp") -> list:
    blk = m.blocks[k]
    if method == "brute_force":
        if field_ != "Fp":
            raise ValueError("the brute-force scan works over F_p only")
        return [{"rows": [list(r) for r in w], "signs": (), "links": (), "w": ()}
                for w in _block_bruteforce(m, blk)]
    if method == "structural":
        F = PrimeField(m.p) if field_ == "Fp" else QuadraticExtension(m.p)
        return _block_structural(m, blk, F)
    raise ValueError(f"unknown method {method!r}")


def enumerate_iota_isotropic(m: ResidueModel, method: str = "structural",
                             field: str = "Fp") -> list[IsotropicSolution]:
    """All iota-isotropic W, as a direct sum of per-block solutions.

    ``field="Fp2"`` runs the structural solver over F_{p^2}; the basis rows
    then hold pairs (a, b) meaning a + b s with s^2 a fixed non-residue.
    """
    per_block = [enumerate_block(m, k, method, field) for k in range(len(m.blocks))]
    out = []
    F = PrimeField(m.p) if field == "Fp" else QuadraticExtension(m.p)
    for combo in product(*per_block):
        rows = []
        for blk, sol in zip(m.blocks, combo):
            rows += _embed_rows(sol["rows"], blk.coords, m.dim) if field == "Fp" else \
                _embed_rows_ext(sol["rows"], blk.coords, m.dim)
        basis = rref(rows, m.p) if field == "Fp" else tuple(tuple(F.key(x) for x in r) for r in rows)
        out.append(IsotropicSolution(
            basis=basis,
            signs=tuple(s["signs"] for s in combo),
            links=tuple(s["links"] for s in combo),
            w=tuple(tuple(tuple(v) for v in s["w"]) for s in combo),
            field=F.name,
        ))
    out.sort(key=lambda s: s.basis)
    return out


def _embed_rows_ext(rows, coords, dim):
    out = []
    for r in rows:
        full = [(0, 0)] * dim
        for t, u in enumerate(coords):
            full[u] = r[t]
        out.append(full)
    return out


def passes_rank_test(m: ResidueModel, basis: Sequence[Sequence[int]]) -> bool:
    """Isotropy plus the rank conditions, block by block (F_p bases only)."""
    F = PrimeField(m.p)
    for blk in m.blocks:
        rows = [[r[u] for u in blk.coords] for r in basis]
        rows = [list(r) for r in rref(rows, m.p)] if rows else []
        if not rows:
            rows_np = np.zeros((1, 0, len(blk.coords)), dtype=np.int64)
        else:
            rows_np = np.array([rows], dtype=np.int64)
        if rows and not is_isotropic(m, rows, F, blk.coords):
            return False
        if 2 * len(rows) != len(blk.coords) - (len(blk.coords) % 2):
            return False
        degs = [m.degrees[u] for u in blk.coords]
        phi = [m.phi[u] for u in blk.coords]
        levels = list(range(1, len(blk.targets) + 1))
        got = rank_drops(rows_np, degs, phi, m.p, levels)[0]
        if tuple(int(x) for x in got) != blk.targets:
            return False
    return True


def block_split_ok(m: ResidueModel, sol: IsotropicSolution) -> bool:
    """W equals the direct sum of its intersections with the blocks."""
    total = 0
    for blk in m.blocks:
        others = [u for u in range(m.dim) if u not in blk.coords]
        # W cap Q_blk = vectors of W vanishing on the other coordinates
        rows = [list(r) for r in sol.basis]
        if not rows:
            continue
        sub = rref([[r[u] for u in others] for r in rows], m.p) if others else ()
        total += len(rows) - len(sub)
    return total == len(sol.basis)


def sign_orbit_ok(m: ResidueModel, sols: Sequence[IsotropicSolution]) -> bool:
    """Sign flips of the coordinates permute the solutions transitively."""
    if not sols:
        return True
    keys = {s.basis for s in sols}
    start = sols[0].basis
    orbit = set()
    for flips in product((1, -1), repeat=m.dim):
        rows = [[x * f for x, f in zip(r, flips)] for r in start]
        b = rref(rows, m.p) if rows else ()
        if b not in keys:
            return False
        orbit.add(b)
    return orbit == keys


@dataclass
class CountReport:
    d: Partition
    p: int
    seed: int
    expected: int
    structural: int
    brute_force: int | None
    same_sets: bool | None
    resamples: int
    used_seed: int
    ok: bool
    notes: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def derived_seed(seed: int, attempt: int) -> int:
    return seed if attempt == 0 else seed * 1_000_003 + attempt


def count_report(d, p: int = 101, seed: int = 0, brute: bool = True,
                 max_resamples: int = 400) -> CountReport:
    """Compare structural and brute-force counts with 2^(beta - c).

    Draws whose F_p-rational structural count falls short of the generic
    count (a needed square root lies outside F_p) or that hit a degenerate
    link are resampled with derived seeds; the number of resamples is
    reported.
    """
    d = canon(d)
    inv = orbit_invariants(d, "B")
    expected = 2 ** (inv.beta - inv.c)
    notes = []
    for attempt in range(max_resamples):
        s = derived_seed(seed, attempt)
        try:
            m = build_residue_model(d, p, s)
            ext = enumerate_iota_isotropic(m, "structural", "Fp2")
            sols = enumerate_iota_isotropic(m, "structural", "Fp")
        except GenericityFailure as exc:
            notes.append(f"seed {s}: {exc}")
            continue
        if len(ext) != expected:
            notes.append(f"seed {s}: F_p^2 count {len(ext)}")
            continue
        if len(sols) != expected:
            continue
        ok = True
        for sol in sols:
            ok &= passes_rank_test(m, sol.basis)
            ok &= block_split_ok(m, sol)
        ok &= _components_nonzero(m, sols)
        ok &= sign_orbit_ok(m, sols) if m.dim <= 12 else True
        bf = same = None
        if brute:
            bsols = enumerate_iota_isotropic(m, "brute_force")
            bf = len(bsols)
            same = {x.basis for x in bsols} == {x.basis for x in sols}
            ok &= same and bf == expected
        return CountReport(d, p, seed, expected, len(sols), bf, same, attempt, s,
                           bool(ok and len(sols) == expected), notes)
    raise RetriesExhausted(f"no F_p-rational generic draw for {fmt(d)} in {max_resamples} tries")


def _components_nonzero(m: ResidueModel, sols: Sequence[IsotropicSolution]) -> bool:
    """Every w vector is nonzero on each coordinate of its degree group."""
    for sol in sols:
        for blk, ws in zip(m.blocks, sol.w):
            degs = [m.degrees[u] for u in blk.coords]
            for g, vec in zip(degree_groups(degs), ws):
                if any(vec[u] % m.p == 0 for u in g):
                    return False
    return True


def count_check(d, p: int = 101, seed: int = 0, brute: bool = True) -> bool:
    return count_report(d, p, seed, brute).ok
