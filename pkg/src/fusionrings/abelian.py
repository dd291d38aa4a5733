"""Finite abelian groups and exact linear algebra over Z.

Everything in this module is computed with plain Python integers, so there is
no overflow to worry about.  The workhorse is the Smith normal form with full
transform tracking (U A V = D with U, V unimodular, together with their
inverses), from which we get integer kernels, integer linear solves, lattice
bases and quotient types — all that is needed to present finite abelian groups
and compute subquotients exactly.

Matrices are lists of rows of ints.  Vectors are lists of ints.
"""

from collections import namedtuple
from itertools import product as _cartesian


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    bt = list(zip(*b)) if k else []
    return [[sum(ra[t] * ct[t] for t in range(k)) for ct in bt] for ra in a]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


SNF = namedtuple("SNF", ["d", "u", "v", "uinv", "vinv"])


def smith_normal_form(a):
    """Smith normal form with transforms: returns (D, U, V, Uinv, Vinv).

    U A V = D where U (m x m) and V (n x n) are unimodular and D is diagonal
    with nonnegative entries d_1 | d_2 | ... ; Uinv, Vinv are the exact integer
    inverses of U and V.

    >>> s = smith_normal_form([[2, 4], [6, 8]])
    >>> [s.d[i][i] for i in range(2)]
    [2, 4]
    >>> mat_mul(mat_mul(s.u, [[2, 4], [6, 8]]), s.v) == s.d
    True
    >>> mat_mul(s.u, s.uinv) == identity_matrix(2)
    True
    """
    d = [row[:] for row in a]
    m = len(d)
    n = len(d[0]) if m else 0
    u, uinv = identity_matrix(m), identity_matrix(m)
    v, vinv = identity_matrix(n), identity_matrix(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:  # inverse gets the inverse column op
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        for r in uinv:  # col_j -= c * col_i
            r[j] -= c * r[i]

    def add_col(i, j, c):
        # col_i += c * col_j
        for r in d:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]
        vinv[j] = [x - c * y for x, y in zip(vinv[j], vinv[i])]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        # find a pivot of minimal absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        # clear row and column t; restart whenever a remainder appears,
        # which shrinks the pivot and so terminates
        while True:
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(i, t, -q)
            if any(d[i][t] for i in range(t + 1, m)):
                # a nonzero remainder became the new, smaller pivot
                i = next(i for i in range(t + 1, m) if d[i][t])
                swap_rows(t, i)
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(j, t, -q)
            if any(d[t][j] for j in range(t + 1, n)):
                j = next(j for j in range(t + 1, n) if d[t][j])
                swap_cols(t, j)
                continue
            break
        # divisibility: d_t must divide every remaining entry
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t]:
                    add_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    return SNF(d, u, v, uinv, vinv)


def det(a):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def diagonal_entries(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def integer_kernel(a):
    """Basis (list of columns) of {x in Z^n : A x = 0}.

    >>> integer_kernel([[2, -1, 0]])
    [[1, 2, 0], [0, 0, 1]]
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return []
    s = smith_normal_form(a)
    diag = diagonal_entries(s.d)
    basis = []
    for j in range(n):
        if j >= len(diag) or diag[j] == 0:
            basis.append([s.v[i][j] for i in range(n)])
    return basis


def solve_integer(a, b):
    """One integer solution x of A x = b, or None if none exists."""
    m = len(a)
    n = len(a[0]) if m else 0
    s = smith_normal_form(a)
    c = mat_vec(s.u, b)
    diag = diagonal_entries(s.d)
    y = [0] * n
    for i in range(m):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di:
                return None
            y[i] = c[i] // di
    return mat_vec(s.v, y)


def lattice_basis(cols):
    """Basis of the lattice spanned by the given columns (vectors in Z^n).

    Returns a list of basis vectors (length = rank of the span).
    """
    if not cols:
        return []
    n = len(cols[0])
    a = [[col[i] for col in cols] for i in range(n)]
    s = smith_normal_form(a)
    diag = diagonal_entries(s.d)
    basis = []
    for i, di in enumerate(diag):
        if di != 0:
            basis.append([di * s.uinv[r][i] for r in range(n)])
    return basis


def quotient_invariants(basis, subgens):
    """Invariant factors of L / <subgens> for a lattice L with given basis.

    ``basis`` is a list of r independent vectors spanning L; every vector in
    ``subgens`` must lie in L.  Raises ValueError if a generator is outside L
    or if the quotient is infinite.
    """
    r = len(basis)
    if r == 0:
        if any(any(g) for g in subgens):
            raise ValueError("generator outside the lattice")
        return ()
    n = len(basis[0])
    bmat = [[basis[j][i] for j in range(r)] for i in range(n)]
    ys = []
    for g in subgens:
        y = solve_integer(bmat, list(g))
        if y is None:
            raise ValueError("generator outside the lattice")
        ys.append(y)
    if not ys:
        raise ValueError("infinite quotient")
    ymat = [[y[i] for y in ys] for i in range(r)]
    diag = diagonal_entries(smith_normal_form(ymat).d)
    if len(diag) < r or any(d == 0 for d in diag):
        raise ValueError("infinite quotient")
    return tuple(d for d in diag if d > 1)


def _invariant_factors(orders):
    """Canonical invariant factors (each divides the next, 1s dropped)."""
    primary = {}
    for o in orders:
        o = int(o)
        if o <= 1:
            continue
        d = 2
        while d * d <= o:
            if o % d == 0:
                e = 0
                while o % d == 0:
                    o //= d
                    e += 1
                primary.setdefault(d, []).append(d ** e)
            d += 1
        if o > 1:
            primary.setdefault(o, []).append(o)
    for p in primary:
        primary[p].sort(reverse=True)
    depth = max((len(v) for v in primary.values()), default=0)
    factors = []
    for k in range(depth):
        f = 1
        for p in primary:
            if k < len(primary[p]):
                f *= primary[p][k]
        factors.append(f)
    factors.reverse()
    return tuple(factors)


class FiniteAbelianGroup:
    """A finite abelian group as a product of cyclic factors Z_{n_1} x ...

    Elements are tuples of ints, the i-th taken mod n_i.  Equality and hashing
    are up to isomorphism (invariant factors), which is the comparison every
    caller here wants: Z_2 x Z_3 == Z_6.

    >>> FiniteAbelianGroup((2, 3)) == FiniteAbelianGroup((6,))
    True
    >>> str(FiniteAbelianGroup((2, 4)))
    'Z_2 x Z_4'
    >>> FiniteAbelianGroup((12,)).element_order((4,))
    3
    """

    __slots__ = ("orders",)

    def __init__(self, orders=()):
        orders = tuple(int(o) for o in orders)
        if any(o < 1 for o in orders):
            raise ValueError("cyclic factor orders must be >= 1")
        self.orders = orders

    @classmethod
    def cyclic(cls, n):
        return cls((n,))

    @classmethod
    def trivial(cls):
        return cls(())

    @property
    def invariant_factors(self):
        return _invariant_factors(self.orders)

    @property
    def order(self):
        n = 1
        for o in self.orders:
            n *= o
        return n

    @property
    def is_trivial(self):
        return self.order == 1

    def zero(self):
        return (0,) * len(self.orders)

    def add(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def scalar(self, k, a):
        return tuple((k * x) % o for x, o in zip(a, self.orders))

    def elements(self):
        return _cartesian(*(range(o) for o in self.orders))

    def element_order(self, a):
        from math import gcd

        n = 1
        for x, o in zip(a, self.orders):
            k = o // gcd(x, o)
            n = n * k // gcd(n, k)
        return n

    def subgroup_generated(self, gens):
        """Set of all elements generated by ``gens``."""
        seen = {self.zero()}
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.add(a, tuple(g))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return seen

    def __eq__(self, other):
        if not isinstance(other, FiniteAbelianGroup):
            return NotImplemented
        return self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        return "FiniteAbelianGroup(%r)" % (self.orders,)

    def __str__(self):
        facs = self.invariant_factors
        if not facs:
            return "trivial"
        return " x ".join("Z_%d" % f for f in facs)


def group_from_table(n, mul):
    """Isomorphism type of an abelian group given by a multiplication table.

    ``mul(i, j)`` returns the index of the product of elements i and j,
    0 <= i, j < n.  The group is reconstructed from the presentation with one
    generator per element and the relations e_i + e_j = e_{mul(i,j)}.

    >>> g = group_from_table(4, lambda i, j: (i + j) % 4)
    >>> str(g)
    'Z_4'
    """
    if n == 1:
        return FiniteAbelianGroup.trivial()
    rels = []
    for i in range(n):
        for j in range(i, n):
            row = [0] * n
            row[i] += 1
            row[j] += 1
            row[mul(i, j)] -= 1
            rels.append(row)
    diag = diagonal_entries(smith_normal_form(rels).d)
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1))


def quotient_with_map(orders, relations):
    """Quotient of Z_{n_1} x ... x Z_{n_k} by extra relations, with the map.

    ``relations`` is a list of integer vectors (length k) whose classes are
    killed.  Returns (group, f) where ``group`` is the quotient and ``f`` maps
    an integer vector of length k to its class, a tuple indexed like
    ``group.orders``.

    >>> g, f = quotient_with_map((4,), [[2]])
    >>> str(g), f([1]), f([2]), f([3])
    ('Z_2', (1,), (0,), (1,))
    """
    k = len(orders)
    if k == 0:
        return FiniteAbelianGroup.trivial(), lambda v: ()
    cols = [[orders[i] if r == i else 0 for i in range(k)] for r in range(k)]
    cols += [list(v) for v in relations]
    a = [[col[i] for col in cols] for i in range(k)]
    s = smith_normal_form(a)
    diag = diagonal_entries(s.d)
    keep = [i for i in range(k) if diag[i] > 1]
    group = FiniteAbelianGroup(tuple(diag[i] for i in keep))
    u = s.u

    def f(vec):
        return tuple(
            sum(u[i][j] * vec[j] for j in range(k)) % diag[i] for i in keep
        )

    return group, f


# if __name__ == "__main__":
#     import doctest
#     doctest.testmod(verbose=True)
