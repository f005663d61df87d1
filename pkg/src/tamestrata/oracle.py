"""Brute-force ground truth in an explicit matrix model.

V is realised as E_0^{m_0} with the F-basis pi^a * theta^b * e_j (pi a
monomial uniformizer of E_0, theta a residue generator), matrices over
truncated t-series with coefficients in k_F.  The order \\mathfrak{A} is the
chain order of {p_{E_0}^k}; membership in radical powers reads off block
valuations e_A*val_t(entry) + a_row - a_col.  All lattice questions reduce
to F_p row spaces of the finite quotient A/P^M, computed by Gaussian
elimination; no code is shared with the closed-form paths, so agreement is
evidence.

Centralisers are computed as commutants of generating matrices, with the
solution space re-projected at increasing internal precision until it
stabilises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotNested, PrecisionExhausted, TooLarge, ZeroToPrecision,
)
from .strata import DefiningSeq, OrderDesc
from .tame import TameSeries

_MAX_N = 8


# ---------------------------------------------------------------------------
# F_p row spaces
# ---------------------------------------------------------------------------

class Subspace:
    """Row space over F_p in reduced row echelon form."""

    def __init__(self, p, width, rows=()):
        self.p = p
        self.width = width
        self.rows = []      # RREF rows
        self.pivots = []
        for r in rows:
            self.add(r)

    @property
    def dim(self):
        return len(self.rows)

    def _reduce(self, vec):
        vec = list(vec)
        p = self.p
        for row, piv in zip(self.rows, self.pivots):
            c = vec[piv] % p
            if c:
                for i in range(piv, self.width):
                    vec[i] = (vec[i] - c * row[i]) % p
        return vec

    def add(self, vec) -> bool:
        """Insert a vector; returns True if it enlarged the space."""
        vec = self._reduce(vec)
        piv = next((i for i, c in enumerate(vec) if c % self.p), None)
        if piv is None:
            return False
        inv = pow(vec[piv], self.p - 2, self.p)
        vec = [(c * inv) % self.p for c in vec]
        # back-substitute into existing rows
        for k, (row, rpiv) in enumerate(zip(self.rows, self.pivots)):
            c = row[piv]
            if c:
                self.rows[k] = [(a - c * b) % self.p for a, b in zip(row, vec)]
        idx = next((k for k, rp in enumerate(self.pivots) if rp > piv),
                   len(self.pivots))
        self.rows.insert(idx, vec)
        self.pivots.insert(idx, piv)
        return True

    def contains(self, vec) -> bool:
        return not any(c % self.p for c in self._reduce(vec))

    def contains_space(self, other) -> bool:
        return all(self.contains(r) for r in other.rows)

    def sum(self, other) -> "Subspace":
        out = Subspace(self.p, self.width, self.rows)
        for r in other.rows:
            out.add(r)
        return out

    def intersect(self, other) -> "Subspace":
        # Zassenhaus: row-reduce [A|A; B|0], intersection in right half of
        # rows with zero left half
        w = self.width
        combined = []
        for r in self.rows:
            combined.append(r + r)
        for r in other.rows:
            combined.append(r + [0] * w)
        big = Subspace(self.p, 2 * w, combined)
        out = Subspace(self.p, w)
        for row in big.rows:
            if not any(row[:w]):
                out.add(row[w:])
        return out

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.p == other.p
                and self.width == other.width and self.rows == other.rows)


def nullspace(rows, width, p):
    """Basis of the right nullspace of the given matrix over F_p."""
    space = Subspace(p, width, rows)
    pivset = set(space.pivots)
    basis = []
    for free in range(width):
        if free in pivset:
            continue
        vec = [0] * width
        vec[free] = 1
        for row, piv in zip(space.rows, space.pivots):
            vec[piv] = (-row[free]) % p
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# matrices over truncated t-series
# ---------------------------------------------------------------------------

class SeriesMatrix:
    """N x N matrix; each entry maps t-exponent -> k_L element (in k_F)."""

    __slots__ = ("model", "entries")

    def __init__(self, model, entries):
        self.model = model
        self.entries = entries     # dict (row, col) -> dict w -> FqElem

    def mul(self, other) -> "SeriesMatrix":
        N = self.model.N
        out = {}
        for (r, k), ser1 in self.entries.items():
            for c in range(N):
                ser2 = other.entries.get((k, c))
                if not ser2:
                    continue
                acc = out.setdefault((r, c), {})
                for w1, c1 in ser1.items():
                    for w2, c2 in ser2.items():
                        w = w1 + w2
                        v = acc.get(w)
                        v = c1 * c2 if v is None else v + c1 * c2
                        if v.is_zero():
                            acc.pop(w, None)
                        else:
                            acc[w] = v
        return SeriesMatrix(self.model, _clean(out))

    def sub(self, other) -> "SeriesMatrix":
        out = {k: dict(v) for k, v in self.entries.items()}
        for key, ser in other.entries.items():
            acc = out.setdefault(key, {})
            for w, c in ser.items():
                v = acc.get(w)
                v = -c if v is None else v - c
                if v.is_zero():
                    acc.pop(w, None)
                else:
                    acc[w] = v
        return SeriesMatrix(self.model, _clean(out))

    def block_val(self):
        """nu_A of the matrix: min over entries of e_A*w + a_row - a_col."""
        best = None
        model = self.model
        for (r, c), ser in self.entries.items():
            delta = model.block_of(r) - model.block_of(c)
            for w in ser:
                v = model.e_A * w + delta
                best = v if best is None or v < best else best
        return best

    def trace_min_ord(self):
        """Min t-valuation of the trace, or None if the trace vanishes."""
        acc = {}
        for i in range(self.model.N):
            ser = self.entries.get((i, i))
            if not ser:
                continue
            for w, c in ser.items():
                v = acc.get(w)
                v = c if v is None else v + c
                if v.is_zero():
                    acc.pop(w, None)
                else:
                    acc[w] = v
        return min(acc) if acc else None


def _clean(entries):
    return {k: v for k, v in entries.items() if v}


# ---------------------------------------------------------------------------
# the model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeHandle:
    """A lattice between A and P^M, as its row space in A/P^M."""
    space: Subspace
    M: int


class MatrixModel:
    def __init__(self, order: OrderDesc, prec: int):
        tower = order.tower
        if order.N > _MAX_N:
            raise TooLarge(f"N={order.N} exceeds the oracle bound {_MAX_N}")
        self.order = order
        self.tower = tower
        self.N = order.N
        self.e_A = order.e_A
        self.prec = prec                     # t-window half-width
        self.p = tower.base.p
        self.deg_F = tower.base.f            # [k_F : F_p]
        e0, f0 = tower.level_e(0), tower.level_f(0)
        self.e0, self.f0 = e0, f0
        self.m0 = order.m[0]
        self.pi = tower.uniformizer(0)       # monomial uniformizer of E_0
        self.theta = tower.residue_generator(0)
        # F-basis of V: index (a, b, j) -> a + e0*(b + f0*j)
        self.basis = [(a, b, j) for j in range(self.m0)
                      for b in range(f0) for a in range(e0)]
        self.index = {v: i for i, v in enumerate(self.basis)}
        # k_F coordinates inside k_L, via the F_p-basis theta_F^i of k_F
        thetaF = tower.residue_generator(tower.d)
        self._kF_basis = [thetaF ** i for i in range(self.deg_F)]
        self._kF_solver = self._make_kf_solver()
        # residue coordinates of k_{E_0} over k_F in the theta^b basis
        self._theta_solver = self._make_theta_solver()
        self._commutant_cache = {}
        self._matrix_cache = {}

    # -- coefficient coordinate helpers -----------------------------------

    def _make_kf_solver(self):
        k = self.tower.k
        cols = [list(b.coeffs) for b in self._kF_basis]
        width = k.f
        rows = [[cols[j][i] for j in range(self.deg_F)] for i in range(width)]
        return _LinearSolver(self.p, rows)

    def _make_theta_solver(self):
        # basis of k_{E_0} over k_F: theta^b * theta_F^i
        k = self.tower.k
        basis = []
        for b in range(self.f0):
            for i in range(self.deg_F):
                basis.append((self.theta ** b) * self._kF_basis[i])
        rows = [[list(v.coeffs)[i] for v in basis] for i in range(k.f)]
        return _LinearSolver(self.p, rows)

    def kF_coords(self, c):
        """Coordinates of a k_F element in the theta_F basis."""
        sol = self._kF_solver.solve(list(c.coeffs))
        if sol is None:
            raise PrecisionExhausted("coefficient not in k_F")
        return sol

    def kF_from_coords(self, coords):
        acc = self.tower.k.zero()
        for x, b in zip(coords, self._kF_basis):
            if x % self.p:
                acc = acc + b * x
        return acc

    def residue_coords(self, c):
        """(b, i) coordinates of a k_{E_0} element over theta^b theta_F^i."""
        sol = self._theta_solver.solve(list(c.coeffs))
        if sol is None:
            raise PrecisionExhausted("coefficient not in k_{E_0}")
        return sol

    def block_of(self, idx: int) -> int:
        return self.basis[idx][0]

    # -- element matrices ---------------------------------------------------

    def elt_to_matrix(self, x: TameSeries) -> SeriesMatrix:
        """Matrix of multiplication by x in E_0 acting on V = E_0^{m0}."""
        key = x.key()
        if key in self._matrix_cache:
            return self._matrix_cache[key]
        tower = self.tower
        if not x.in_level(0):
            raise ZeroToPrecision("element must lie in E_0")
        if x.prec_k is not None and x.prec_k < (self.prec + 1) * tower.e:
            raise PrecisionExhausted("element precision below the model window")
        entries = {}
        for (a, b, j) in self.basis:
            col = self.index[(a, b, j)]
            prod = x * (self.pi ** a) * tower.monomial(self.theta ** b, 0)
            for w, a2, coeffs in self._expand(prod):
                for b2, cF in coeffs:
                    if cF.is_zero():
                        continue
                    row = self.index[(a2, b2, j)]
                    acc = entries.setdefault((row, col), {})
                    acc[w] = acc[w] + cF if w in acc else cF
        mat = SeriesMatrix(self, _clean(
            {k: {w: c for w, c in v.items() if not c.is_zero()}
             for k, v in entries.items()}))
        self._matrix_cache[key] = mat
        return mat

    def _expand(self, x: TameSeries):
        """Rewrite an E_0 element as sum of t^w * pi^a * (k_{E_0} residue)."""
        tower = self.tower
        m_pi = tower.e // self.e0
        out = []
        for k, c in x.terms:
            if k % m_pi:
                raise PrecisionExhausted("term outside E_0's value group")
            kk = k // m_pi
            a = kk % self.e0
            w = (kk - a) // self.e0
            # gamma = (c s^k) / (t^w pi^a), a constant in k_{E_0}
            gamma_ser = tower.monomial(c, Fraction(k, tower.e)) \
                * (self.pi ** a).inverse() * (tower.pi_F() ** w).inverse()
            (kg, gamma), = gamma_ser.terms
            assert kg == 0
            coords = self.residue_coords(gamma)
            coeffs = []
            for b2 in range(self.f0):
                cF = self.kF_from_coords(
                    coords[b2 * self.deg_F:(b2 + 1) * self.deg_F])
                coeffs.append((b2, cF))
            out.append((w, a, coeffs))
        return out

    # -- quotient coordinates ----------------------------------------------

    def coords_of_quotient(self, M: int):
        """Coordinate index list for A/P^M: (row, col, w, i)."""
        coords = []
        for r in range(self.N):
            for c in range(self.N):
                delta = self.block_of(r) - self.block_of(c)
                w = -(delta // self.e_A)            # ceil(-delta/e_A)
                while self.e_A * w + delta < M:
                    for i in range(self.deg_F):
                        coords.append((r, c, w, i))
                    w += 1
        return coords

    def flatten(self, mat: SeriesMatrix, coords, coord_index) -> list:
        vec = [0] * len(coords)
        for (r, c), ser in mat.entries.items():
            delta = self.block_of(r) - self.block_of(c)
            for w, coeff in ser.items():
                if self.e_A * w + delta < 0:
                    raise NotNested("matrix is not integral for the order")
                key = (r, c, w)
                if key not in coord_index:
                    continue   # beyond the window: quotient by P^M
                base = coord_index[key]
                for i, x in enumerate(self.kF_coords(coeff)):
                    if x % self.p:
                        vec[base + i] = x % self.p
        return vec

    def unflatten_basis(self, coord) -> SeriesMatrix:
        r, c, w, i = coord
        coeff = self._kF_basis[i]
        return SeriesMatrix(self, {(r, c): {w: coeff}})

    @staticmethod
    def coord_index_map(coords):
        out = {}
        for pos, (r, c, w, i) in enumerate(coords):
            if i == 0:
                out[(r, c, w)] = pos
        return out

    # -- lattice subspaces ---------------------------------------------------

    def quotient_context(self, M: int):
        coords = self.coords_of_quotient(M)
        return _Quotient(self, M, coords, self.coord_index_map(coords))

    def commutant_in_quotient(self, level: int, quot) -> Subspace:
        """Image of B_level ∩ A in A/P^M, stabilised over internal slack."""
        key = (level, quot.M)
        if key in self._commutant_cache:
            return self._commutant_cache[key]
        tower = self.tower
        gens = [tower.monomial(tower.residue_generator(level), 0),
                tower.uniformizer(level)]
        gen_mats = [self.elt_to_matrix(g.at_level(0)) for g in gens]
        prev = None
        for slack in range(0, 4 * self.e_A + 1, self.e_A):
            space = self._commutant_once(gen_mats, quot, quot.M + slack)
            if prev is not None and prev == space:
                self._commutant_cache[key] = space
                return space
            prev = space
        raise PrecisionExhausted("commutant projection did not stabilise")

    def _commutant_once(self, gen_mats, quot, M_big) -> Subspace:
        # the generators are integral, so ad(x) is determined mod P^{M_big}
        big = self.quotient_context(M_big)
        rows = []
        for coord in big.coords:
            x = self.unflatten_basis(coord)
            row = []
            for g in gen_mats:
                ad = g.mul(x).sub(x.mul(g))
                row.extend(_flatten_window(self, ad, 0, M_big))
            rows.append(row)
        width = len(rows[0]) if rows else 0
        matrix = [[rows[j][i] for j in range(len(rows))] for i in range(width)]
        kernel = nullspace(matrix, len(big.coords), self.p)
        out = Subspace(self.p, len(quot.coords))
        for vec in kernel:
            mat = self._vec_to_matrix(vec, big.coords)
            out.add(self.flatten(mat, quot.coords, quot.index))
        return out

    def _vec_to_matrix(self, vec, coords) -> SeriesMatrix:
        entries = {}
        for x, coord in zip(vec, coords):
            if x % self.p == 0:
                continue
            r, c, w, i = coord
            acc = entries.setdefault((r, c), {})
            add = self._kF_basis[i] * x
            acc[w] = acc[w] + add if w in acc else add
        return SeriesMatrix(self, _clean(
            {k: {w: c for w, c in v.items() if not c.is_zero()}
             for k, v in entries.items()}))


class _Quotient:
    __slots__ = ("model", "M", "coords", "index")

    def __init__(self, model, M, coords, index):
        self.model = model
        self.M = M
        self.coords = coords
        self.index = index

    def radical_power(self, k: int) -> Subspace:
        out = Subspace(self.model.p, len(self.coords))
        for pos, (r, c, w, i) in enumerate(self.coords):
            delta = self.model.block_of(r) - self.model.block_of(c)
            if self.model.e_A * w + delta >= k:
                vec = [0] * len(self.coords)
                vec[pos] = 1
                out.add(vec)
        return out

    def order_level(self, level: int, k: int = 0) -> Subspace:
        """Image of P^k ∩ B_level = Q_level^k in this quotient."""
        comm = self.model.commutant_in_quotient(level, self)
        if k <= 0:
            return comm
        return comm.intersect(self.radical_power(k))


class _LinearSolver:
    """Solve A x = b over F_p for a fixed A, by precomputed elimination."""

    def __init__(self, p, rows):
        self.p = p
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        aug = [list(r) + [1 if i == j else 0 for j in range(self.nrows)]
               for i, r in enumerate(rows)]
        pivots = []
        rank = 0
        for col in range(self.ncols):
            sel = next((r for r in range(rank, self.nrows)
                        if aug[r][col] % p), None)
            if sel is None:
                continue
            aug[rank], aug[sel] = aug[sel], aug[rank]
            inv = pow(aug[rank][col], p - 2, p)
            aug[rank] = [(x * inv) % p for x in aug[rank]]
            for r in range(self.nrows):
                if r != rank and aug[r][col] % p:
                    f = aug[r][col]
                    aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[rank])]
            pivots.append(col)
            rank += 1
        self.aug = aug
        self.pivots = pivots
        self.rank = rank

    def solve(self, b):
        p = self.p
        y = [sum(self.aug[r][self.ncols + i] * b[i] for i in range(self.nrows)) % p
             for r in range(self.nrows)]
        x = [0] * self.ncols
        for r, col in enumerate(self.pivots):
            x[col] = y[r]
        # consistency: rows beyond the rank must vanish
        for r in range(self.rank, self.nrows):
            if y[r] % p:
                return None
        # verify (cheap, dimensions are tiny)
        return x


# ---------------------------------------------------------------------------
# public oracle operations
# ---------------------------------------------------------------------------

def model_build(order: OrderDesc, prec: int = None) -> MatrixModel:
    if prec is None:
        prec = 24
    return MatrixModel(order, prec)


def oracle_nu(model: MatrixModel, x: TameSeries) -> int:
    v = model.elt_to_matrix(x.at_level(0)).block_val()
    if v is None:
        raise ZeroToPrecision("zero matrix has no valuation")
    return v


def oracle_k0(model: MatrixModel, beta: TameSeries):
    """Critical exponent by direct linear algebra; None is -infinity."""
    bmat = model.elt_to_matrix(beta.at_level(0))
    if _lies_in_F(model, bmat):
        return None
    n = -bmat.block_val()
    e_A = model.e_A
    J = 2 * n + 2 * e_A + 1
    big = model.quotient_context(J)
    res = model.quotient_context(1)
    bp = _b_plus_p_image(model, bmat, res, J)
    k = -n
    while k <= n + 2 * e_A:
        sol = _nk_image(model, bmat, big, res, k)
        if bp.contains_space(sol):
            return k - 1 if k > -n else None
        k += 1
    raise PrecisionExhausted("k0 scan did not terminate")


def _lies_in_F(model, bmat):
    # beta acts as an F-scalar iff its matrix is scalar with F-entries;
    # multiplication by an E_0 element is scalar iff the element is in F.
    N = model.N
    diag = bmat.entries.get((0, 0), {})
    for r in range(N):
        for c in range(N):
            ser = bmat.entries.get((r, c), {})
            if r == c:
                if ser != diag:
                    return False
            elif ser:
                return False
    return True


def _nk_image(model, bmat, big, res, k):
    """Image in A/P of the solution space of ad_beta(x) in P^k."""
    shift = bmat.block_val()
    rows = []
    for coord in big.coords:
        x = model.unflatten_basis(coord)
        ad = bmat.mul(x).sub(x.mul(bmat))
        # flatten ad over window [shift, k): use quotient at k, coords with
        # val >= shift are all representable; entries below shift impossible
        row = _flatten_window(model, ad, shift, k)
        rows.append(row)
    width = len(rows[0]) if rows else 0
    matrix = [[rows[j][i] for j in range(len(rows))] for i in range(width)]
    kernel = nullspace(matrix, len(big.coords), model.p)
    out = Subspace(model.p, len(res.coords))
    for vec in kernel:
        mat = model._vec_to_matrix(vec, big.coords)
        out.add(model.flatten(mat, res.coords, res.index))
    return out


def _flatten_window(model, mat, lo, hi):
    """Coordinates of a matrix over block valuations in [lo, hi)."""
    coords = []
    for r in range(model.N):
        for c in range(model.N):
            delta = model.block_of(r) - model.block_of(c)
            w = -(-(lo - delta) // model.e_A)     # ceil
            while model.e_A * w + delta < hi:
                coords.append((r, c, w))
                w += 1
    index = {key: i * model.deg_F for i, key in enumerate(coords)}
    vec = [0] * (len(coords) * model.deg_F)
    for (r, c), ser in mat.entries.items():
        for w, coeff in ser.items():
            key = (r, c, w)
            if key not in index:
                delta = model.block_of(r) - model.block_of(c)
                if model.e_A * w + delta < lo:
                    raise NotNested("entry below the window floor")
                continue
            base = index[key]
            for i, x in enumerate(model.kF_coords(coeff)):
                vec[base + i] = x % model.p
    return vec


def _b_plus_p_image(model, bmat, res, J):
    """Image of (commutant of beta) + P in A/P, stabilised over slack."""
    prev = None
    for slack in range(0, 4 * model.e_A + 1, model.e_A):
        big = model.quotient_context(J + slack)
        space = _commutant_image(model, bmat, big, res)
        space = space.sum(res.radical_power(1))
        if prev is not None and prev == space:
            return space
        prev = space
    raise PrecisionExhausted("commutant image did not stabilise")


def _commutant_image(model, bmat, big, res):
    shift = bmat.block_val()
    rows = []
    for coord in big.coords:
        x = model.unflatten_basis(coord)
        ad = bmat.mul(x).sub(x.mul(bmat))
        rows.append(_flatten_window(model, ad, shift, big.M + shift))
    width = len(rows[0]) if rows else 0
    matrix = [[rows[j][i] for j in range(len(rows))] for i in range(width)]
    kernel = nullspace(matrix, len(big.coords), model.p)
    out = Subspace(model.p, len(res.coords))
    for vec in kernel:
        mat = model._vec_to_matrix(vec, big.coords)
        out.add(model.flatten(mat, res.coords, res.index))
    return out


def oracle_hj(model: MatrixModel, seq: DefiningSeq):
    """The h and j lattices of a defining sequence, by the recursion.

    Returns a dict with LatticeHandles for h, j and the quotient bound M.
    """
    n, s = seq.n, seq.s
    M = n // 2 + 1
    quot = model.quotient_context(M)
    level_s = seq.entries[s].level
    h = quot.order_level(level_s, 0).sum(quot.radical_power(n // 2 + 1))
    j = quot.order_level(level_s, 0).sum(quot.radical_power((n + 1) // 2))
    for i in range(s - 1, -1, -1):
        r_next = seq.entries[i + 1].r
        b_i = quot.order_level(seq.entries[i].level, 0)
        h = b_i.sum(h.intersect(quot.radical_power(r_next // 2 + 1)))
        j = b_i.sum(j.intersect(quot.radical_power((r_next + 1) // 2)))
    return {"h": LatticeHandle(h, M), "j": LatticeHandle(j, M),
            "quotient": quot}


def oracle_index(model: MatrixModel, big: LatticeHandle, small: LatticeHandle):
    """log_p of a lattice index, by dimension counting in A/P^M.

    Both lattices must have the same intersection with P^M (true for all
    the pairs this oracle is asked about: same tail by construction).
    """
    if big.M != small.M:
        raise NotNested("handles over different quotients")
    if not big.space.contains_space(small.space):
        raise NotNested("claimed sublattice is not contained")
    return big.space.dim - small.space.dim


def oracle_table_lattice(model: MatrixModel, factors, M: int) -> LatticeHandle:
    """Lattice of a prefix-type factor table: sum of Q_level^exponent."""
    quot = model.quotient_context(M)
    out = Subspace(model.p, len(quot.coords))
    for level, exponent in factors:
        out = out.sum(quot.order_level(level, exponent))
    return LatticeHandle(out, M)


def oracle_char_module_min_ord(model: MatrixModel, c: TameSeries,
                               level: int, exponent: int):
    """Min ord over F of Tr(c * Q_level^exponent), by spanning probes."""
    cmat = model.elt_to_matrix(c.at_level(0))
    nu_c = cmat.block_val()
    M = exponent + abs(nu_c) + 3 * model.e_A
    quot = model.quotient_context(M)
    sub = quot.order_level(level, exponent)
    best = None
    for row in sub.rows:
        mat = model._vec_to_matrix(row, quot.coords)
        tr = cmat.mul(mat).trace_min_ord()
        if tr is not None and (best is None or tr < best):
            best = tr
    tail_bound = -(-(M + nu_c) // model.e_A)
    if best is None or best >= tail_bound:
        raise PrecisionExhausted("trace module window too small")
    return best
