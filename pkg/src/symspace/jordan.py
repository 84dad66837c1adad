"""Jordan-pair models of the classical compact Hermitian symmetric spaces.

Families:
    I:r,s  -- r x s complex matrices, triple product {x,y,z} = xyz + zyx
    II:k   -- alternating k x k matrices, same product
    III:k  -- symmetric k x k matrices, same product
    IV:k   -- C^k with the bilinear form b(x,y) = sum x_i y_i and
              {x,y,z} = 2(b(x,y)z + b(z,y)x - b(x,z)y)

Elements are coordinate vectors over the natural unit basis of each model.
The descriptor carries the graded Lie algebra data (pairing matrix, Levi
basis, Killing form on the Levi factor, Cartan involution) and the generic
norm polynomial, all verified at construction time.
"""

from __future__ import annotations

from .errors import (
    InvalidParams,
    NotInL,
    NotQuasiInvertible,
    ShapeMismatch,
    SingularMatrix,
    SymspaceError,
    UnsupportedSpace,
)
from .jets import Jet
from .linalg import (
    ReducedBasis,
    identity,
    mat_det,
    mat_inverse,
    mat_mul,
    mat_sub,
    mat_trace,
    mat_vec,
    ring_mat_vec_solve,
    transpose,
)
from .multipoly import MultiPoly, poly_det, poly_nth_root
from .scalars import HALF, ONE, ZERO, GaussianRational, gr, grq

_TWO = GaussianRational(2)


# ---------------------------------------------------------------------------
# family models
# ---------------------------------------------------------------------------


def _mm(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            acc = Ai[0] * B[0][j]
            for t in range(1, k):
                acc = acc + Ai[t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


class _ModelI:
    family = "I"

    def __init__(self, r, s):
        self.r, self.s = r, s
        self.dim = r * s

    def to_plus(self, v, zero):
        r, s = self.r, self.s
        return [[v[a * s + b] for b in range(s)] for a in range(r)]

    def from_plus(self, M):
        r, s = self.r, self.s
        return [M[a][b] for a in range(r) for b in range(s)]

    def to_minus(self, w, zero):
        r, s = self.r, self.s
        return [[w[c * r + d] for d in range(r)] for c in range(s)]

    def from_minus(self, M):
        r, s = self.r, self.s
        return [M[c][d] for c in range(s) for d in range(r)]

    def triple_plus(self, x, y, z):
        zero = x[0] * 0
        X, Y, Z = self.to_plus(x, zero), self.to_minus(y, zero), self.to_plus(z, zero)
        return self.from_plus(_madd(_mm(_mm(X, Y), Z), _mm(_mm(Z, Y), X)))

    def triple_minus(self, a, b, c):
        zero = a[0] * 0
        A, B, C = self.to_minus(a, zero), self.to_plus(b, zero), self.to_minus(c, zero)
        return self.from_minus(_madd(_mm(_mm(A, B), C), _mm(_mm(C, B), A)))

    def conj_plus(self, v):
        r, s = self.r, self.s
        return [v[d * s + c].conj() for c in range(s) for d in range(r)]

    def conj_minus(self, w):
        r, s = self.r, self.s
        return [w[b * r + a].conj() for a in range(r) for b in range(s)]

    def frame(self):
        r, s = self.r, self.s
        out = []
        for j in range(r):
            v = [ZERO] * self.dim
            v[j * s + (s - 1 - j)] = ONE
            out.append(v)
        return out


class _ModelII:
    family = "II"

    def __init__(self, k):
        self.k = k
        self.pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.dim = len(self.pairs)

    def to_plus(self, v, zero):
        k = self.k
        M = [[zero for _ in range(k)] for _ in range(k)]
        for i, (a, b) in enumerate(self.pairs):
            M[a][b] = v[i]
            M[b][a] = -v[i]
        return M

    def from_plus(self, M):
        return [M[a][b] for (a, b) in self.pairs]

    to_minus = to_plus
    from_minus = from_plus

    def triple_plus(self, x, y, z):
        zero = x[0] * 0
        X, Y, Z = self.to_plus(x, zero), self.to_plus(y, zero), self.to_plus(z, zero)
        return self.from_plus(_madd(_mm(_mm(X, Y), Z), _mm(_mm(Z, Y), X)))

    triple_minus = triple_plus

    def conj_plus(self, v):
        return [-x.conj() for x in v]

    conj_minus = conj_plus

    def frame(self):
        out = []
        for j in range(self.k // 2):
            v = [ZERO] * self.dim
            v[self.index[(2 * j, 2 * j + 1)]] = ONE
            out.append(v)
        return out


class _ModelIII:
    family = "III"

    def __init__(self, k):
        self.k = k
        self.pairs = [(a, b) for a in range(k) for b in range(a, k)]
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.dim = len(self.pairs)

    def to_plus(self, v, zero):
        k = self.k
        M = [[zero for _ in range(k)] for _ in range(k)]
        for i, (a, b) in enumerate(self.pairs):
            M[a][b] = v[i]
            if a != b:
                M[b][a] = v[i]
        return M

    def from_plus(self, M):
        return [M[a][b] for (a, b) in self.pairs]

    to_minus = to_plus
    from_minus = from_plus

    def triple_plus(self, x, y, z):
        zero = x[0] * 0
        X, Y, Z = self.to_plus(x, zero), self.to_plus(y, zero), self.to_plus(z, zero)
        return self.from_plus(_madd(_mm(_mm(X, Y), Z), _mm(_mm(Z, Y), X)))

    triple_minus = triple_plus

    def conj_plus(self, v):
        return [x.conj() for x in v]

    conj_minus = conj_plus

    def frame(self):
        out = []
        for j in range(self.k):
            v = [ZERO] * self.dim
            v[self.index[(j, j)]] = ONE
            out.append(v)
        return out


class _ModelIV:
    family = "IV"

    def __init__(self, k):
        self.k = k
        self.dim = k

    @staticmethod
    def _beta(u, v):
        acc = u[0] * v[0]
        for a, b in zip(u[1:], v[1:]):
            acc = acc + a * b
        return acc

    def triple_plus(self, x, y, z):
        bxy = self._beta(x, y)
        bzy = self._beta(z, y)
        bxz = self._beta(x, z)
        return [(bxy * zi + bzy * xi - bxz * yi) * 2 for xi, yi, zi in zip(x, y, z)]

    triple_minus = triple_plus

    def conj_plus(self, v):
        return [x.conj() for x in v]

    conj_minus = conj_plus

    def frame(self):
        half = HALF
        ihalf = gr(0, 1) * HALF
        e1 = [half, ihalf] + [ZERO] * (self.k - 2)
        e2 = [half, -ihalf] + [ZERO] * (self.k - 2)
        return [e1, e2]


def _madd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


# ---------------------------------------------------------------------------
# appendix classification constants
# ---------------------------------------------------------------------------


def classification_row(family, params):
    """(dim n, rank r, genus p) for each family, exceptional types included."""
    if family == "I":
        r, s = params
        return r * s, r, r + s
    if family == "II":
        k = params
        return k * (k - 1) // 2, k // 2, 2 * k - 2
    if family == "III":
        k = params
        return k * (k + 1) // 2, k, k + 1
    if family == "IV":
        k = params
        return k, 2, k
    if family == "V":
        return 16, 2, 12
    if family == "VI":
        return 27, 3, 18
    raise InvalidParams(f"unknown family {family!r}")


def _levi_dim(family, params):
    """Dimension of the Levi image in End(n+) (the pair's structure algebra)."""
    if family == "I":
        r, s = params
        return r * r + s * s - 1
    if family == "II":
        # For k = 2 the pair is one-dimensional and gl_k acts through a character.
        return 1 if params == 2 else params * params
    if family == "III":
        return params * params
    if family == "IV":
        return params * (params - 1) // 2 + 1
    raise InvalidParams(family)


# ---------------------------------------------------------------------------
# descriptor
# ---------------------------------------------------------------------------


class GElement:
    """Graded Lie algebra element (v, T, w) with T given by its action on n+."""

    __slots__ = ("v", "T", "w")

    def __init__(self, v, T, w):
        self.v = list(v)
        self.T = [list(row) for row in T]
        self.w = list(w)

    def __eq__(self, other):
        if not isinstance(other, GElement):
            return NotImplemented
        return self.v == other.v and self.T == other.T and self.w == other.w

    def __repr__(self):
        return f"GElement(v={self.v}, T={self.T}, w={self.w})"


class SpaceDescriptor:
    """Concrete Jordan-pair model of one classical space, fully verified."""

    def __init__(self, family, params):
        self.family = family
        self.params = params
        self._taylor_cache = {}
        self._build()

    # construction ---------------------------------------------------------

    def _build(self):
        family, params = self.family, self.params
        n, r, p = classification_row(family, params)
        self.dim_n, self.rank_r, self.genus_p = n, r, p
        if family == "I":
            self.model = _ModelI(*params)
        elif family == "II":
            self.model = _ModelII(params)
        elif family == "III":
            self.model = _ModelIII(params)
        elif family == "IV":
            self.model = _ModelIV(params)
        else:
            raise UnsupportedSpace(f"family {family} has root data only")
        if self.model.dim != n:
            raise SymspaceError("model dimension disagrees with the classification")

        self.basis = [self._unit(i) for i in range(n)]
        self.frame = self.model.frame()
        if len(self.frame) != r:
            raise SymspaceError("frame length disagrees with the classification rank")

        self._build_pairing()
        self._build_levi()
        self._build_delta()
        self._verify_frame()
        self._verify_gram()
        self.sign_vf = self._fix_vf_sign()

    def _unit(self, i):
        v = [ZERO] * self.dim_n
        v[i] = ONE
        return v

    def _build_pairing(self):
        n = self.dim_n
        m = self.model
        # kappa(v, w) = -2 Tr+ D_{v,w}; trace over the n+ basis.
        K = []
        for a in range(n):
            row = []
            ca = self.basis[a]
            for j in range(n):
                wj = self._unit(j)
                tr = ZERO
                for t in range(n):
                    tr = tr + m.triple_plus(ca, wj, self.basis[t])[t]
                row.append(tr * (-2))
            K.append(row)
        self.K = K
        self.Kinv = mat_inverse(K)
        self.dual_basis = [[self.Kinv[j][k] for j in range(n)] for k in range(n)]
        # Hermitian Gram of (v|w) = -kappa(v, conj w) on the n+ basis.
        conj_basis = [m.conj_plus(c) for c in self.basis]
        G = []
        for a in range(n):
            G.append([-(kappa_raw(K, self.basis[a], conj_basis[b])) for b in range(n)])
        self.G = G
        self.Ginv = mat_inverse(G)

    def _build_levi(self):
        n = self.dim_n
        basis = ReducedBasis([])
        for a in range(n):
            for b in range(n):
                D = d_matrix(self, self.basis[a], self.dual_basis[b])
                basis.add([D[i][j] for i in range(n) for j in range(n)])
        # Reduced rows are themselves (vectorized) Levi operators.
        self.lbasis = basis
        self.lbasis_mats = [
            [row[i * n : (i + 1) * n] for i in range(n)] for row in basis.rows
        ]
        expected = _levi_dim(self.family, self.params)
        if basis.dim != expected:
            raise SymspaceError(
                f"Levi dimension {basis.dim} != expected {expected} for {self.grammar()}"
            )
        ident = identity(n)
        if not basis.contains([ident[i][j] for i in range(n) for j in range(n)]):
            raise SymspaceError("identity operator is missing from the Levi span")
        self._build_levi_killing()

    def _build_levi_killing(self):
        d = self.lbasis.dim
        n = self.dim_n
        ads = []
        for Li in self.lbasis_mats:
            cols = []
            for Lk in self.lbasis_mats:
                Br = mat_sub(mat_mul(Li, Lk), mat_mul(Lk, Li))
                coords = self.lbasis.coordinates_in(
                    [Br[i][j] for i in range(n) for j in range(n)]
                )
                if coords is None:
                    raise SymspaceError("Levi span is not closed under brackets")
                cols.append(coords)
            ads.append(transpose(cols))
        gram = []
        for i in range(d):
            row = []
            for j in range(d):
                row.append(mat_trace(mat_mul(ads[i], ads[j])))
            gram.append(row)
        self.lgram = gram

    def _symbolic_coords(self):
        n = self.dim_n
        names = tuple(f"x{i+1}" for i in range(n)) + tuple(f"y{i+1}" for i in range(n))
        xs = [MultiPoly.variable(names, i) for i in range(n)]
        ys = [MultiPoly.variable(names, n + i) for i in range(n)]
        return names, xs, ys

    def _symbolic_bergman_columns(self, xs, ys):
        cols = []
        for j in range(self.dim_n):
            cj = self.basis[j]
            qyc = [HALF * t for t in self.model.triple_minus(ys, cj, ys)]
            qxqyc = [HALF * t for t in self.model.triple_plus(xs, qyc, xs)]
            dxy = self.model.triple_plus(xs, ys, cj)
            col = [cj[i] - dxy[i] + qxqyc[i] for i in range(self.dim_n)]
            cols.append(col)
        return cols

    def _build_delta(self):
        names, xs, ys = self._symbolic_coords()
        m = self.model
        fam = self.family
        n, p = self.dim_n, self.genus_p
        bcols = self._symbolic_bergman_columns(xs, ys)
        zero_poly = MultiPoly.zero(names)

        if fam in ("I", "II", "III"):
            if fam == "I":
                r, s = self.params
                X = m.to_plus(xs, zero_poly)
                Y = m.to_minus(ys, zero_poly)
            else:
                k = self.params
                X = m.to_plus(xs, zero_poly)
                Y = m.to_minus(ys, zero_poly)
            XY = _mm(X, Y)
            YX = _mm(Y, X)
            A = _eye_minus(XY, names)
            A2 = _eye_minus(YX, names)
            # Entrywise check: B(x,y)z == (1-xy) z (1-yx) for every basis z.
            for j in range(n):
                Z = m.to_plus(self.basis[j], zero_poly)
                closed = m.from_plus(_mm(_mm(A, Z), A2))
                if closed != bcols[j]:
                    raise SymspaceError("Bergman operator disagrees with closed form")
            detA = poly_det(A)
            if fam == "I":
                detA2 = poly_det(A2)
                if detA != detA2:
                    raise SymspaceError("det(1-xy) != det(1-yx)")
                self.delta_poly = detA
            elif fam == "III":
                if A2 != [list(row) for row in zip(*A)]:
                    raise SymspaceError("1-yx is not the transpose of 1-xy")
                self.delta_poly = detA
            else:
                if A2 != [list(row) for row in zip(*A)]:
                    raise SymspaceError("1-yx is not the transpose of 1-xy")
                self.delta_poly = poly_nth_root(detA, 2)
        else:
            beta = m._beta
            bxy = beta(xs, ys)
            qx = beta(xs, xs)
            qy = beta(ys, ys)
            one = MultiPoly.constant(names, ONE)
            delta = one - _TWO * bxy + qx * qy
            # B z = Delta z + phi(z) x + psi(z) y  (rank-two update of Delta*Id)
            for j in range(n):
                cj = self.basis[j]
                bzy = beta(cj, ys)
                bxz = beta(xs, cj)
                phi = _TWO * _TWO * bxy * bzy - _TWO * bzy - _TWO * qy * bxz
                psi = _TWO * bxz - _TWO * qx * bzy
                col = [delta * cj[i] + phi * xs[i] + psi * ys[i] for i in range(n)]
                if col != bcols[j]:
                    raise SymspaceError("Bergman operator disagrees with closed form")
            phi_x = _TWO * _TWO * bxy * bxy - _TWO * bxy - _TWO * qy * qx
            phi_y = _TWO * _TWO * bxy * qy - _TWO * qy - _TWO * qy * bxy
            psi_x = _TWO * qx - _TWO * qx * bxy
            psi_y = _TWO * bxy - _TWO * qx * qy
            block = (delta + phi_x) * (delta + psi_y) - phi_y * psi_x
            if block != delta * delta:
                raise SymspaceError("rank-two determinant block is not Delta^2")
            self.delta_poly = delta

        self.delta_vars = names
        if self.delta_poly.constant_term() != ONE:
            raise SymspaceError("generic norm must have constant term 1")
        for e in self.delta_poly.terms:
            if sum(e[:n]) != sum(e[n:]):
                raise SymspaceError("generic norm must be xy-balanced")
        if _dense_verifiable(fam, self.params):
            full = poly_det([[_col_entry(bcols, i, j) for j in range(n)] for i in range(n)])
            root = poly_nth_root(full, p)
            if root != self.delta_poly:
                raise SymspaceError("dense p-th root disagrees with generic norm")

    def _verify_frame(self):
        m = self.model
        for i, e in enumerate(self.frame):
            ebar = m.conj_plus(e)
            te = m.triple_plus(e, ebar, e)
            if te != [x * 2 for x in e]:
                raise SymspaceError(f"frame element {i} is not a tripotent")
            for j, f in enumerate(self.frame):
                if i == j:
                    continue
                D = d_matrix(self, e, m.conj_plus(f))
                if any(any(x for x in row) for row in D):
                    raise SymspaceError("frame elements are not orthogonal")
        for a in range(self.dim_n):
            for k in range(self.dim_n):
                want = ONE if a == k else ZERO
                if kappa_raw(self.K, self.basis[a], self.dual_basis[k]) != want:
                    raise SymspaceError("dual basis pairing failed")

    def _verify_gram(self):
        n = self.dim_n
        for a in range(n):
            for b in range(n):
                if self.G[a][b] != self.G[b][a].conj():
                    raise SymspaceError("Gram matrix is not Hermitian")
        for k in range(1, n + 1):
            minor = mat_det([row[:k] for row in self.G[:k]])
            if not (minor.is_real() and minor.re > 0):
                raise SymspaceError("Gram matrix is not positive definite")

    def _fix_vf_sign(self):
        v = self.basis[0]
        z = [grq(1, 2) if i % 2 == 0 else grq(-1, 3) for i in range(self.dim_n)]
        X1 = z0(self)
        X2 = GElement(v, _zero_matrix(self.dim_n), [ZERO] * self.dim_n)
        field = vf_bracket_eval(self, X1, X2, z)
        abstract = vf_eval(self, bracket(self, X1, X2), z)
        if field == abstract:
            return 1
        if field == [-x for x in abstract]:
            return -1
        raise SymspaceError("vector-field bracket does not match the algebra bracket")

    # conveniences -----------------------------------------------------------

    def grammar(self):
        if self.family == "I":
            return f"I:{self.params[0]},{self.params[1]}"
        return f"{self.family}:{self.params}"

    def __repr__(self):
        return (
            f"SpaceDescriptor({self.grammar()}, n={self.dim_n}, "
            f"r={self.rank_r}, p={self.genus_p})"
        )


def _zero_matrix(n):
    return [[ZERO] * n for _ in range(n)]


def _eye_minus(M, names):
    n = len(M)
    one = MultiPoly.constant(names, ONE)
    return [[(one - M[i][j]) if i == j else -M[i][j] for j in range(n)] for i in range(n)]


def _col_entry(cols, i, j):
    return cols[j][i]


_DENSE = {
    ("I", (1, 1)),
    ("I", (1, 2)),
    ("I", (1, 3)),
    ("I", (1, 4)),
    ("I", (2, 2)),
    ("II", 2),
    ("II", 3),
    ("III", 1),
    ("III", 2),
    ("IV", 3),
    ("IV", 4),
}


def _dense_verifiable(family, params):
    return (family, params) in _DENSE


# ---------------------------------------------------------------------------
# space factory
# ---------------------------------------------------------------------------

_SPACES = {}


def parse_space(text):
    """Parse the grammar "I:r,s" | "II:k" | "III:k" | "IV:k" | "V" | "VI"."""
    s = text.strip()
    if s in ("V", "VI"):
        return s, None
    if ":" not in s:
        raise InvalidParams(f"bad space string {text!r}")
    fam, _, rest = s.partition(":")
    fam = fam.strip()
    if fam == "I":
        bits = rest.split(",")
        if len(bits) != 2:
            raise InvalidParams(f"family I needs r,s: {text!r}")
        try:
            r, sdim = int(bits[0]), int(bits[1])
        except ValueError:
            raise InvalidParams(f"bad parameters in {text!r}")
        return "I", (r, sdim)
    if fam in ("II", "III", "IV"):
        try:
            k = int(rest)
        except ValueError:
            raise InvalidParams(f"bad parameter in {text!r}")
        return fam, k
    raise InvalidParams(f"unknown family in {text!r}")


def validate_params(family, params):
    if family == "I":
        r, s = params
        if r < 1 or s < 1 or r > s:
            raise InvalidParams(f"family I needs 1 <= r <= s, got {params}")
    elif family == "II":
        if params < 2:
            raise InvalidParams("family II needs k >= 2")
    elif family == "III":
        if params < 1:
            raise InvalidParams("family III needs k >= 1")
    elif family == "IV":
        if params < 3:
            raise InvalidParams("family IV needs k >= 3 (smaller k is not simple)")
    elif family in ("V", "VI"):
        raise UnsupportedSpace(f"family {family}: root-level data only")
    else:
        raise InvalidParams(f"unknown family {family!r}")


def make_space(family, params=None):
    """Build (and cache) the verified descriptor for a classical space."""
    if params is None and isinstance(family, str) and (":" in family or family in ("V", "VI")):
        family, params = parse_space(family)
    if isinstance(params, list):
        params = tuple(params)
    validate_params(family, params)
    key = (family, params)
    S = _SPACES.get(key)
    if S is None:
        S = SpaceDescriptor(family, params)
        _SPACES[key] = S
    return S


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def _check_len(S, v, side="+"):
    if len(v) != S.dim_n:
        raise ShapeMismatch(f"expected {S.dim_n} coordinates on n{side}, got {len(v)}")


def triple_product(S, x, y, z):
    """{x y z} for x, z in n+ and y in n-."""
    _check_len(S, x)
    _check_len(S, y, "-")
    _check_len(S, z)
    return S.model.triple_plus(x, y, z)


def triple_product_minus(S, a, b, c):
    """{a b c} for a, c in n- and b in n+."""
    return S.model.triple_minus(a, b, c)


def q_operator(S, x, w):
    """Q_x w = {x,w,x}/2 for x in n+, w in n-."""
    return [t * HALF for t in S.model.triple_plus(x, w, x)]


def q_operator_minus(S, y, v):
    return [t * HALF for t in S.model.triple_minus(y, v, y)]


def d_matrix(S, x, y):
    """Matrix of D_{x,y} acting on n+ in the unit basis."""
    n = S.dim_n
    cols = [S.model.triple_plus(x, y, S.basis[j]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def bergman(S, x, y):
    """Matrix of B(x,y) = Id - D_{x,y} + Q_x Q_y on n+ (any scalar ring)."""
    _check_len(S, x)
    _check_len(S, y, "-")
    n = S.dim_n
    zero = x[0] * 0
    one = zero + 1
    cols = []
    for j in range(n):
        cj = S.basis[j]
        qyc = [t * HALF for t in S.model.triple_minus(y, cj, y)]
        qxqyc = [t * HALF for t in S.model.triple_plus(x, qyc, x)]
        d = S.model.triple_plus(x, y, cj)
        col = [(one if i == j else zero) - d[i] + qxqyc[i] for i in range(n)]
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def bergman_minus(S, y, x):
    """Matrix of B(y,x) acting on n-."""
    n = S.dim_n
    zero = y[0] * 0
    one = zero + 1
    cols = []
    for j in range(n):
        cj = S.basis[j]
        qxc = [t * HALF for t in S.model.triple_plus(x, cj, x)]
        qyqxc = [t * HALF for t in S.model.triple_minus(y, qxc, y)]
        d = S.model.triple_minus(y, x, cj)
        col = [(one if i == j else zero) - d[i] + qyqxc[i] for i in range(n)]
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def generic_norm(S, x, y):
    """Delta(x,y), evaluated from the cached generic norm polynomial."""
    _check_len(S, x)
    _check_len(S, y, "-")
    zero = x[0] * 0
    return S.delta_poly.evaluate(list(x) + list(y), zero=zero)


def quasi_inverse(S, x, y):
    """x^y = B(x,y)^{-1}(x - Q_x y); raises NotQuasiInvertible on Delta = 0."""
    _check_len(S, x)
    _check_len(S, y, "-")
    if isinstance(x[0], GaussianRational) and isinstance(y[0], GaussianRational):
        delta = generic_norm(S, x, y)
        if not delta:
            raise NotQuasiInvertible(delta)
    B = bergman(S, x, y)
    qxy = q_operator(S, x, y)
    rhs = [a - b for a, b in zip(x, qxy)]
    try:
        return ring_mat_vec_solve(B, rhs)
    except SingularMatrix:
        raise NotQuasiInvertible(None)


def quasi_inverse_minus(S, y, x):
    """y^x on the n- side."""
    if isinstance(x[0], GaussianRational) and isinstance(y[0], GaussianRational):
        delta = generic_norm(S, x, y)
        if not delta:
            raise NotQuasiInvertible(delta)
    B = bergman_minus(S, y, x)
    qyx = q_operator_minus(S, y, x)
    rhs = [a - b for a, b in zip(y, qyx)]
    try:
        return ring_mat_vec_solve(B, rhs)
    except SingularMatrix:
        raise NotQuasiInvertible(None)


def conjugate(S, v, side="+"):
    """Model conjugation n+ <-> n-."""
    _check_len(S, v, side)
    if side == "+":
        return S.model.conj_plus(v)
    return S.model.conj_minus(v)


def kappa_raw(K, v, w):
    acc = None
    for a, va in enumerate(v):
        if isinstance(va, GaussianRational) and not va:
            continue
        row = K[a]
        for j, wj in enumerate(w):
            if isinstance(wj, GaussianRational) and not wj:
                continue
            term = va * row[j] * wj
            acc = term if acc is None else acc + term
    if acc is None:
        return v[0] * 0
    return acc


def kappa(S, v, w):
    """Killing pairing kappa(v, w) for v in n+, w in n-."""
    return kappa_raw(S.K, v, w)


def inner(S, v, w):
    """(v|w) = -kappa(v, conj w); w must have plain Q(i) coordinates."""
    return -kappa(S, v, S.model.conj_plus(w))


def t_minus(S, T):
    """Action on n- of a Levi operator given by its n+ matrix."""
    return [[-x for x in row] for row in mat_mul(S.Kinv, mat_mul(transpose(T), S.K))]


def require_in_l(S, T):
    n = S.dim_n
    if S.lbasis.coordinates_in([T[i][j] for i in range(n) for j in range(n)]) is None:
        raise NotInL("operator is outside the Levi span")


def levi_coordinates(S, T):
    n = S.dim_n
    coords = S.lbasis.coordinates_in([T[i][j] for i in range(n) for j in range(n)])
    if coords is None:
        raise NotInL("operator is outside the Levi span")
    return coords


def killing_form(S, X1, X2):
    """kappa(X1, X2) for graded elements."""
    c1 = levi_coordinates(S, X1.T)
    c2 = levi_coordinates(S, X2.T)
    kl = ZERO
    for i, a in enumerate(c1):
        if not a:
            continue
        for j, b in enumerate(c2):
            if not b:
                continue
            kl = kl + a * b * S.lgram[i][j]
    tt = mat_trace(mat_mul(X1.T, X2.T))
    d12 = mat_trace(d_matrix(S, X1.v, X2.w))
    d21 = mat_trace(d_matrix(S, X2.v, X1.w))
    return kl + _TWO * (tt - d12 - d21)


def bracket(S, X1, X2):
    """[X1, X2] by the graded commutator formula."""
    require_in_l(S, X1.T)
    require_in_l(S, X2.T)
    v = [a - b for a, b in zip(mat_vec(X1.T, X2.v), mat_vec(X2.T, X1.v))]
    T = mat_sub(
        _madd(d_matrix(S, X2.v, X1.w), mat_sub(mat_mul(X1.T, X2.T), mat_mul(X2.T, X1.T))),
        d_matrix(S, X1.v, X2.w),
    )
    T1m = t_minus(S, X1.T)
    T2m = t_minus(S, X2.T)
    w = [a - b for a, b in zip(mat_vec(T2m, X1.w), mat_vec(T1m, X2.w))]
    return GElement(v, T, w)


def t_star(S, T):
    """Adjoint of T with respect to the Hermitian inner product (.|.)."""
    n = S.dim_n
    Tbar_t = [[T[j][i].conj() for j in range(n)] for i in range(n)]
    GT = transpose(S.G)
    GTinv = transpose(S.Ginv)
    return mat_mul(GTinv, mat_mul(Tbar_t, GT))


def cartan_involution(S, X):
    """theta(v, T, w) = (conj w, -T*, conj v)."""
    require_in_l(S, X.T)
    Tst = t_star(S, X.T)
    return GElement(
        S.model.conj_minus(X.w),
        [[-x for x in row] for row in Tst],
        S.model.conj_plus(X.v),
    )


def vf_eval(S, X, z):
    """Value of the holomorphic vector field of X = (v, T, w) at z in n+."""
    tz = mat_vec(X.T, z)
    qzw = q_operator(S, z, X.w)
    return [a + b + c for a, b, c in zip(X.v, tz, qzw)]


def vf_bracket_eval(S, X1, X2, z):
    """[zeta1, zeta2](z) = d zeta1(z)[zeta2(z)] - d zeta2(z)[zeta1(z)] via jets."""
    f1 = vf_eval(S, X1, z)
    f2 = vf_eval(S, X2, z)
    out = []
    jz1 = [Jet(a, b) for a, b in zip(z, f2)]
    jz2 = [Jet(a, b) for a, b in zip(z, f1)]
    d1 = vf_eval(S, X1, jz1)
    d2 = vf_eval(S, X2, jz2)
    for a, b in zip(d1, d2):
        out.append(a.deriv - b.deriv)
    return out


def z0(S):
    """The grading element Z_0 = (0, Id, 0)."""
    n = S.dim_n
    return GElement([ZERO] * n, identity(n), [ZERO] * n)


def gelement(S, v=None, T=None, w=None):
    n = S.dim_n
    return GElement(
        v if v is not None else [ZERO] * n,
        T if T is not None else _zero_matrix(n),
        w if w is not None else [ZERO] * n,
    )


def trace_plus(S, T):
    return mat_trace(T)
