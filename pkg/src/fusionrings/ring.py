"""Fusion rings and their intrinsic computations.

A fusion ring is a based Z_{>=0}-ring: a free Z-module on a finite basis
(the "simples") with structure constants N_{ij}^k >= 0, a unit basis element,
and a dual involution * satisfying N_{ij}^{unit} = delta_{j, i*} and Frobenius
reciprocity N_{ij}^k = N_{i* k}^j = N_{k j*}^i.  This module holds the ring
type and every intrinsic computation: axiom verification, Frobenius-Perron
dimensions, word decompositions and K-normality, generated subrings, the
adjoint subring, invertible objects, the universal grading, isomorphism
search, and fusion graphs.

All operations are pure; rings are immutable after construction.
"""

import numpy as np

from . import config
from .abelian import FiniteAbelianGroup, group_from_table, smith_normal_form, diagonal_entries
from .errors import (
    InconsistentGradingError,
    MalformedRingError,
    NonConvergenceError,
)
from .graphs import Digraph


class Grading:
    """A group grading: cyclic factor orders plus a degree per simple.

    Degrees are tuples of ints, the i-th coordinate taken mod orders[i].
    """

    __slots__ = ("orders", "deg")

    def __init__(self, orders, deg):
        self.orders = tuple(int(o) for o in orders)
        self.deg = tuple(tuple(int(c) % o for c, o in zip(d, self.orders)) for d in deg)
        for d in self.deg:
            if len(d) != len(self.orders):
                raise MalformedRingError("degree arity does not match orders")

    @property
    def group(self):
        return FiniteAbelianGroup(self.orders)

    def degree(self, i):
        return self.deg[i]

    def add(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        return self.orders == other.orders and self.deg == other.deg

    def __repr__(self):
        return "Grading(orders=%r, rank=%d)" % (self.orders, len(self.deg))


class FusionRing:
    """Immutable fusion ring.

    Parameters
    ----------
    labels : sequence of distinct strings naming the simples
    unit : index of the unit simple
    dual : sequence of indices, the dual involution
    tensor : (rank, rank, rank) array of nonnegative ints, N_{ij}^k
    grading : optional Grading

    Construction checks only structure (shapes, involution, nonnegativity);
    the ring axioms are checked by :func:`verify_axioms`.
    """

    __slots__ = ("labels", "unit", "dual", "tensor", "grading", "_index")

    def __init__(self, labels, unit, dual, tensor, grading=None):
        labels = tuple(str(x) for x in labels)
        rank = len(labels)
        if len(set(labels)) != rank:
            raise MalformedRingError("labels must be distinct")
        tensor = np.ascontiguousarray(np.asarray(tensor, dtype=np.int64))
        if tensor.shape != (rank, rank, rank):
            raise MalformedRingError("tensor shape %r does not match rank %d" % (tensor.shape, rank))
        if tensor.min(initial=0) < 0:
            raise MalformedRingError("negative fusion coefficient")
        dual = np.asarray(dual, dtype=np.int64)
        if dual.shape != (rank,) or sorted(dual.tolist()) != list(range(rank)):
            raise MalformedRingError("dual must be a permutation of the indices")
        if not all(dual[dual[i]] == i for i in range(rank)):
            raise MalformedRingError("dual is not an involution")
        unit = int(unit)
        if not 0 <= unit < rank:
            raise MalformedRingError("unit index out of range")
        if dual[unit] != unit:
            raise MalformedRingError("dual must fix the unit")
        if grading is not None and len(grading.deg) != rank:
            raise MalformedRingError("grading degree list does not match rank")
        tensor.setflags(write=False)
        dual.setflags(write=False)
        self.labels = labels
        self.unit = unit
        self.dual = dual
        self.tensor = tensor
        self.grading = grading
        self._index = {lab: i for i, lab in enumerate(labels)}

    @property
    def rank(self):
        return len(self.labels)

    def index(self, label):
        return self._index[label]

    def N(self, i, j, k):
        return int(self.tensor[i, j, k])

    def row(self, i, j):
        """Decomposition vector of the product of simples i and j."""
        return self.tensor[i, j]

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.unit == other.unit
            and np.array_equal(self.dual, other.dual)
            and np.array_equal(self.tensor, other.tensor)
            and self.grading == other.grading
        )

    def __repr__(self):
        return "<FusionRing rank=%d unit=%s>" % (self.rank, self.labels[self.unit])


# ---------------------------------------------------------------------------
# axioms


class AxiomReport:
    """Result of verify_axioms: ok flag plus the violated identities."""

    def __init__(self, violations):
        self.violations = list(violations)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "pass"
        head = "; ".join(
            "%s at %s" % (kind, idx) for kind, idx in self.violations[:8]
        )
        more = "" if len(self.violations) <= 8 else " (+%d more)" % (len(self.violations) - 8)
        return "FAIL %d violations: %s%s" % (len(self.violations), head, more)

    def __repr__(self):
        return "<AxiomReport %s>" % self


def verify_axioms(ring):
    """Check every fusion-ring axiom; returns an AxiomReport.

    Unit laws, duality (N_{ij}^1 = delta_{j,i*}), associativity, Frobenius
    reciprocity, and (when a grading is attached) multiplicativity of degrees.
    Associativity is checked exhaustively: with exact integer arithmetic at
    rank <= 24, and with float64 matrix products above that (exact, since all
    intermediate integers stay far below 2**53).
    """
    t = ring.tensor
    r = ring.rank
    dual = ring.dual
    violations = []

    eye = np.eye(r, dtype=np.int64)
    bad = np.argwhere(t[ring.unit] != eye)
    violations += [("unit-left", (ring.unit, int(j), int(k))) for j, k in bad]
    bad = np.argwhere(t[:, ring.unit, :] != eye)
    violations += [("unit-right", (int(i), ring.unit, int(k))) for i, k in bad]

    dual_mat = np.zeros((r, r), dtype=np.int64)
    dual_mat[np.arange(r), dual] = 1
    bad = np.argwhere(t[:, :, ring.unit] != dual_mat)
    violations += [("duality", (int(i), int(j), ring.unit)) for i, j in bad]

    # Frobenius reciprocity: N_{ij}^k = N_{i* k}^j and N_{ij}^k = N_{k j*}^i
    frob1 = t[dual].transpose(0, 2, 1)
    bad = np.argwhere(t != frob1)
    violations += [("frobenius", tuple(int(x) for x in idx)) for idx in bad]
    frob2 = t.transpose(2, 1, 0)[:, dual, :]
    bad = np.argwhere(t != frob2)
    violations += [("frobenius", tuple(int(x) for x in idx)) for idx in bad]

    if r <= 24:
        lhs = np.einsum("ijm,mkl->ijkl", t, t)
        rhs = np.einsum("jkm,iml->ijkl", t, t)
        bad = np.argwhere(lhs != rhs)
        violations += [("associativity", tuple(int(x) for x in idx)) for idx in bad]
    else:
        tf = t.astype(np.float64)
        flat = tf.reshape(r, r * r)
        colflat = tf.reshape(r * r, r)
        for i in range(r):
            lhs = tf[i] @ flat          # (j, k*l):  sum_m N_ij^m N_mk^l
            rhs = (colflat @ tf[i]).reshape(r, r * r)
            if not np.array_equal(lhs, rhs):
                bad = np.argwhere(lhs.reshape(r, r, r) != rhs.reshape(r, r, r))
                violations += [
                    ("associativity", (i, int(j), int(k), int(l))) for j, k, l in bad
                ]

    if ring.grading is not None:
        g = ring.grading
        for i, j, k in np.argwhere(t > 0):
            if g.add(g.degree(int(i)), g.degree(int(j))) != g.degree(int(k)):
                violations.append(("grading", (int(i), int(j), int(k))))
        for i in range(r):
            if g.degree(int(dual[i])) != g.neg(g.degree(i)):
                violations.append(("grading-dual", (i,)))
        if g.degree(ring.unit) != (0,) * len(g.orders):
            violations.append(("grading-unit", (ring.unit,)))

    # dedupe (the two Frobenius forms can flag the same cell)
    seen = set()
    uniq = []
    for v in violations:
        if v not in seen:
            seen.add(v)
            uniq.append(v)
    return AxiomReport(uniq)


# ---------------------------------------------------------------------------
# dimensions


class FPDimVector:
    """Frobenius-Perron dimensions plus the residual of d_i d_j = sum N d_k."""

    def __init__(self, dims, residual):
        self.dims = np.asarray(dims, dtype=np.float64)
        self.residual = float(residual)

    def __getitem__(self, i):
        return float(self.dims[i])

    def __len__(self):
        return len(self.dims)

    def __iter__(self):
        return iter(float(x) for x in self.dims)

    @property
    def total(self):
        """Global dimension sum d_i^2."""
        return float(np.dot(self.dims, self.dims))

    def tolist(self):
        return [float(x) for x in self.dims]

    def __repr__(self):
        return "FPDimVector(%s, residual=%.2e)" % (
            np.array2string(self.dims, precision=5), self.residual)


def fp_dims(ring, tol=None, max_iter=50000):
    """The unique positive dimension character, by power iteration.

    Iterates v -> (sum_i L_i^T) v, which has strictly positive entries for a
    fusion ring, so convergence is geometric.  The result is normalized at the
    unit and certified by the residual max |d_i d_j - sum_k N_{ij}^k d_k|,
    which must stay below tol * max(d)^2 (tol defaults to the configured
    acceptance tolerance).
    """
    if tol is None:
        tol = config.tolerance()
    t = ring.tensor.astype(np.float64)
    m = t.sum(axis=0)
    v = np.ones(ring.rank)
    for _ in range(max_iter):
        w = m @ v
        w /= w.max()
        if np.max(np.abs(w - v)) < config.CONVERGENCE_TOL:
            v = w
            break
        v = w
    else:
        raise NonConvergenceError("power iteration did not converge")
    d = v / v[ring.unit]
    residual = float(np.max(np.abs(np.outer(d, d) - np.einsum("ijk,k->ij", t, d))))
    if residual > tol * float(d.max()) ** 2:
        raise NonConvergenceError(
            "dimension residual %.3e exceeds tolerance (broken ring?)" % residual)
    if d.min() < 1 - 1e-6:
        raise NonConvergenceError("a dimension fell below 1 (broken ring?)")
    return FPDimVector(d, residual)


# ---------------------------------------------------------------------------
# words and K-normality


def _as_word(word):
    out = []
    for step in word:
        if isinstance(step, (tuple, list)):
            i, starred = step
            out.append((int(i), bool(starred)))
        else:
            out.append((int(step), False))
    return out


def decompose_word(ring, word):
    """Decompose a left-to-right tensor word into simples.

    ``word`` is a list of (index, dualed) pairs; a bare index means the plain
    object.  Returns the coefficient vector (an object vector).  The empty
    word is the unit.
    """
    v = np.zeros(ring.rank, dtype=np.int64)
    v[ring.unit] = 1
    for i, starred in _as_word(word):
        if not 0 <= i < ring.rank:
            raise IndexError("word index out of range")
        y = int(ring.dual[i]) if starred else i
        v = v @ ring.tensor[:, y, :]
    return v


class KNormalityReport:
    """Horizon-bounded K-normality of an object.

    ``least`` is the smallest K in 1..k_max with equality at every k in
    [K, k_max], or None; the universal statement beyond the horizon is not
    decided, and the string form says so.
    """

    def __init__(self, obj, k_max, equal_at):
        self.object = obj
        self.k_max = k_max
        self.equal_at = dict(equal_at)  # k -> bool
        least = None
        for k in range(k_max, 0, -1):
            if self.equal_at[k]:
                least = k
            else:
                break
        self.least = least

    def __str__(self):
        if self.least is None:
            return "no K up to horizon %d" % self.k_max
        failing = [k for k in range(1, self.least) if not self.equal_at[k]]
        s = "K=%d (horizon %d)" % (self.least, self.k_max)
        if failing:
            s += "; " + ", ".join("k=%d fails" % k for k in failing)
        return s

    def __repr__(self):
        return "<KNormalityReport %s>" % self


def is_k_normal(ring, x, k_max=8):
    """Least K (within the horizon) with x^k (x*)^k = (x*)^k x^k for k >= K.

    At k = 1 this is the normality test x (x) x* = x* (x) x; for larger k the
    two k-th power blocks are compared in both orders.  The answer is
    horizon-bounded: equality for all k >= K is not decidable here.
    """
    t = ring.tensor
    xd = int(ring.dual[x])
    unit_vec = np.zeros(ring.rank, dtype=np.int64)
    unit_vec[ring.unit] = 1

    equal_at = {}
    pow_x = unit_vec.copy()   # x^{(x)k}
    pow_xd = unit_vec.copy()  # x*^{(x)k}
    for k in range(1, k_max + 1):
        pow_x = pow_x @ t[:, x, :]
        pow_xd = pow_xd @ t[:, xd, :]
        a = pow_x
        for _ in range(k):
            a = a @ t[:, xd, :]
        b = pow_xd
        for _ in range(k):
            b = b @ t[:, x, :]
        equal_at[k] = bool(np.array_equal(a, b))
    return KNormalityReport(x, k_max, equal_at)


# ---------------------------------------------------------------------------
# subrings, invertibles, gradings


def subring_generated(ring, seeds):
    """Support of the fusion subring generated by the seed simples.

    The least index set containing the unit and the seeds that is closed
    under duals and under taking fusion-product support.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("seed set must be nonempty")
    s = {ring.unit}
    for x in seeds:
        s.add(int(x))
        s.add(int(ring.dual[x]))
    while True:
        idx = np.array(sorted(s))
        support = np.unique(np.nonzero(ring.tensor[np.ix_(idx, idx)])[2])
        new = set(int(k) for k in support) | set(int(ring.dual[k]) for k in support)
        if new <= s:
            return tuple(sorted(s))
        s |= new


def is_generator(ring, x):
    """True iff the single object x tensor-generates the whole ring."""
    return len(subring_generated(ring, [x])) == ring.rank


def adjoint_subring(ring):
    """Support of the subring generated by all i (x) i*."""
    support = set()
    for i in range(ring.rank):
        support |= set(int(k) for k in np.nonzero(ring.tensor[i, ring.dual[i]])[0])
    return subring_generated(ring, sorted(support))


class InvertiblesReport:
    """Invertible simples with their group structure."""

    def __init__(self, indices, group, abelian, table):
        self.indices = tuple(indices)
        self.group = group          # FiniteAbelianGroup, or None if nonabelian
        self.abelian = abelian
        self.table = table          # dict (i, j) -> k on invertible indices

    @property
    def order(self):
        return len(self.indices)

    def __str__(self):
        if self.abelian:
            return str(self.group)
        return "nonabelian of order %d" % self.order

    def __repr__(self):
        return "<Invertibles %s: %r>" % (self, self.indices)


def invertibles(ring):
    """The group of invertible simples (those with i (x) i* = unit exactly)."""
    t = ring.tensor
    inv = [
        i for i in range(ring.rank)
        if int(t[i, ring.dual[i]].sum()) == 1 and t[i, ring.dual[i], ring.unit] == 1
    ]
    pos = {g: a for a, g in enumerate(inv)}
    table = {}
    for gi in inv:
        for gj in inv:
            row = t[gi, gj]
            ks = np.nonzero(row)[0]
            # product of invertibles is a single invertible with coefficient 1
            if len(ks) != 1 or row[ks[0]] != 1 or int(ks[0]) not in pos:
                raise MalformedRingError("invertibles are not closed under fusion")
            table[(gi, gj)] = int(ks[0])
    abelian = all(table[(a, b)] == table[(b, a)] for a in inv for b in inv)
    group = None
    if abelian:
        group = group_from_table(len(inv), lambda a, b: pos[table[(inv[a], inv[b])]])
    return InvertiblesReport(inv, group, abelian, table)


def universal_grading(ring):
    """The finest grading, as a Grading (group + degree per simple).

    Components are the equivalence classes of simples under "k appears in
    a (x) j for some adjoint a"; the group law is induced by fusion.  Raises
    InconsistentGradingError if components do not multiply single-valuedly
    (or multiply noncommutatively, which cannot happen for the rings here).
    """
    adj = adjoint_subring(ring)
    t = ring.tensor
    r = ring.rank
    reach = (t[np.asarray(adj)].sum(axis=0) > 0)
    comp = [-1] * r
    n_comp = 0
    for s in range(r):
        if comp[s] != -1:
            continue
        stack = [s]
        comp[s] = n_comp
        while stack:
            u = stack.pop()
            for v in np.nonzero(reach[u] | reach[:, u])[0]:
                if comp[v] == -1:
                    comp[int(v)] = n_comp
                    stack.append(int(v))
        n_comp += 1

    # induced product on components, checked single-valued over all pairs
    prod = {}
    for i in range(r):
        for j in range(r):
            ks = np.nonzero(t[i, j])[0]
            if len(ks) == 0:
                raise InconsistentGradingError("empty fusion product (broken ring)")
            cs = {comp[int(k)] for k in ks}
            if len(cs) != 1:
                raise InconsistentGradingError(
                    "product of components %d,%d is not single-valued" % (comp[i], comp[j]))
            key = (comp[i], comp[j])
            c = cs.pop()
            if prod.setdefault(key, c) != c:
                raise InconsistentGradingError(
                    "inconsistent component product at %r" % (key,))
    for (c1, c2), c in prod.items():
        if prod[(c2, c1)] != c:
            raise InconsistentGradingError("nonabelian universal grading")

    # coordinates: present the component group and read off degrees
    rels = []
    for c1 in range(n_comp):
        for c2 in range(c1, n_comp):
            row = [0] * n_comp
            row[c1] += 1
            row[c2] += 1
            row[prod[(c1, c2)]] -= 1
            rels.append(row)
    a = [[rels[k][i] for k in range(len(rels))] for i in range(n_comp)]
    s = smith_normal_form(a)
    diag = diagonal_entries(s.d)
    keep = [i for i in range(n_comp) if i < len(diag) and diag[i] > 1]
    orders = tuple(diag[i] for i in keep)
    deg = []
    for i in range(r):
        c = comp[i]
        deg.append(tuple(s.u[row][c] % diag[row] for row in keep))
    return Grading(orders, deg)


# ---------------------------------------------------------------------------
# isomorphism search


def _iso_keys(ring, dims):
    t = ring.tensor
    r = ring.rank
    rowsums = t.sum(axis=(1, 2))
    colsums = t.sum(axis=(0, 2))
    keys = []
    for i in range(r):
        keys.append((
            round(dims[i] * 1e6),
            int(ring.dual[i] == i),
            int(rowsums[i]),
            int(colsums[i]),
            int(t[i, i].sum()),
            int(t[i, int(ring.dual[i])].sum()),
        ))
    return keys


def find_isomorphisms(a, b, max_count=None):
    """All fusion-ring isomorphisms a -> b, as index tuples.

    A bijection sigma qualifies when sigma(unit) = unit, sigma commutes with
    duals, and N_{sigma i, sigma j}^{sigma k} = N_{ij}^k.  Candidate images
    are pruned by per-object invariants (FP dimension, self-duality, row
    statistics).  The output order is deterministic.  An empty list means the
    rings are not isomorphic; pass max_count=1 when only existence matters.
    """
    if a.rank != b.rank:
        return []
    da, db = fp_dims(a).dims, fp_dims(b).dims
    ka, kb = _iso_keys(a, da), _iso_keys(b, db)
    if sorted(ka) != sorted(kb):
        return []
    r = a.rank
    cands = {i: [j for j in range(r) if kb[j] == ka[i]] for i in range(r)}
    if any(not c for c in cands.values()):
        return []
    order = sorted(range(r), key=lambda i: (i != a.unit, len(cands[i]), ka[i], i))
    ta, tb = a.tensor, b.tensor
    mapping = np.full(r, -1, dtype=np.int64)
    used = [False] * r
    found = []

    def extend(pos, assigned):
        if max_count is not None and len(found) >= max_count:
            return
        if pos == r:
            found.append(tuple(int(x) for x in mapping))
            return
        i = order[pos]
        di = int(a.dual[i])
        for j in cands[i]:
            if used[j]:
                continue
            if i == a.unit and j != b.unit:
                continue
            if di == i and int(b.dual[j]) != j:
                continue
            if mapping[di] != -1 and int(b.dual[j]) != mapping[di]:
                continue
            sa = assigned + [i]
            sb = [int(mapping[x]) for x in assigned] + [j]
            ia, ib = np.asarray(sa), np.asarray(sb)
            if not (
                np.array_equal(ta[i][np.ix_(ia, ia)], tb[j][np.ix_(ib, ib)])
                and np.array_equal(ta[np.ix_(ia, [i], ia)], tb[np.ix_(ib, [j], ib)])
                and np.array_equal(ta[np.ix_(ia, ia, [i])], tb[np.ix_(ib, ib, [j])])
            ):
                continue
            mapping[i] = j
            used[j] = True
            extend(pos + 1, sa)
            mapping[i] = -1
            used[j] = False

    extend(0, [])
    return sorted(found)


# ---------------------------------------------------------------------------
# fusion graphs


def fusion_graph(ring, x):
    """Digraph of tensoring by x: edge i -> k with multiplicity N_{x i}^k."""
    t = ring.tensor[x]
    edges = {}
    for i, k in np.argwhere(t > 0):
        edges[(int(i), int(k))] = int(t[i, k])
    return Digraph(ring.rank, edges)


# ---------------------------------------------------------------------------
# restriction (plumbing shared by the constructions)


def restrict(ring, indices, grading=None, relabel=None):
    """Subring on a dual- and fusion-closed index set, reindexed from 0.

    ``indices`` must be closed (as produced by subring_generated); entries of
    the big tensor leaving the set would be dropped silently otherwise, so
    closure is checked.  Labels are kept unless ``relabel`` maps old labels to
    new ones.
    """
    idx = list(indices)
    pos = {g: a for a, g in enumerate(idx)}
    t = ring.tensor
    outside = np.delete(np.arange(ring.rank), idx)
    if len(outside) and np.any(t[np.ix_(idx, idx, outside)]):
        raise MalformedRingError("index set is not fusion-closed")
    if any(int(ring.dual[i]) not in pos for i in idx):
        raise MalformedRingError("index set is not dual-closed")
    labels = [ring.labels[i] for i in idx]
    if relabel:
        labels = [relabel.get(l, l) for l in labels]
    sub = t[np.ix_(idx, idx, idx)]
    dual = [pos[int(ring.dual[i])] for i in idx]
    return FusionRing(labels, pos[ring.unit], dual, sub, grading)
