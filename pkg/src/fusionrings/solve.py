"""Completion of partially specified graded fusion rings.

The solver takes target dimensions, a (mandatory) grading, optionally a
partial dual and partially known fusion coefficients, and finds every
completion to a fusion ring.  The pipeline:

  1. enumerate dual involutions consistent with dims, grading and the
     known coefficients (branching when two same-dimension objects could be
     either mutually dual or separately self-dual);
  2. tie coefficients into Frobenius-reciprocity orbits (one variable per
     orbit), pre-fill unit laws, duality, grading zeros and known entries,
     and bound every variable by floor(d_i d_j / d_k + tol);
  3. propagate: row dimension sums (sum_k N_{ij}^k d_k = d_i d_j) are
     enumerated exactly per row, and associativity instances with a single
     undetermined occurrence are solved linearly (vectorized over all
     rank^4 instances at once);
  4. branch on the narrowest remaining variable, smallest-dimension products
     first;
  5. verify the full axioms on every leaf;
  6. dedupe deterministically and group the survivors into isomorphism
     classes.

The same machinery solves module actions over a fixed base ring.
"""

from itertools import permutations

import numpy as np

from . import config
from .errors import (
    MalformedRingError,
    NoSolutionError,
    NonUniqueCompletionError,
    SearchCapExceededError,
)
from .graphs import Digraph
from .ring import FusionRing, Grading, find_isomorphisms, verify_axioms


class PartialRing:
    """A partially specified fusion ring: dims + grading + known entries.

    ``known`` maps (i, j, k) to a coefficient; absent triples are unknown
    (an explicit 0 is a known zero).  ``dual`` may be None, a full
    involution, or a partial dict {i: j}.
    """

    def __init__(self, labels, unit, dims, grading, dual=None, known=None):
        self.labels = tuple(str(x) for x in labels)
        self.unit = int(unit)
        self.dims = np.asarray(dims, dtype=np.float64)
        self.grading = grading
        if grading is None:
            raise MalformedRingError("partial rings require a grading (may be trivial)")
        if len(grading.deg) != len(self.labels):
            raise MalformedRingError("grading does not match rank")
        if self.dims.shape != (len(self.labels),):
            raise MalformedRingError("dims do not match rank")
        if self.dims.min() <= 0:
            raise MalformedRingError("dims must be positive")
        if abs(self.dims[self.unit] - 1.0) > 1e-9:
            raise MalformedRingError("unit must have dimension 1")
        if dual is None:
            self.dual = None
        elif isinstance(dual, dict):
            self.dual = dict(dual)
        else:
            self.dual = {i: int(d) for i, d in enumerate(dual)}
        self.known = {tuple(int(x) for x in k): int(v) for k, v in (known or {}).items()}
        r = len(self.labels)
        for (i, j, k), v in self.known.items():
            if not (0 <= i < r and 0 <= j < r and 0 <= k < r) or v < 0:
                raise MalformedRingError("bad known entry %r" % (((i, j, k), v),))

    @property
    def rank(self):
        return len(self.labels)

    @classmethod
    def from_ring(cls, ring, forget=()):
        """Partial ring with every entry of a finished ring known, except the
        triples listed in ``forget``."""
        grading = ring.grading
        if grading is None:
            from .ring import universal_grading

            grading = universal_grading(ring)
        known = {}
        forget = set(forget)
        r = ring.rank
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    if (i, j, k) not in forget:
                        known[(i, j, k)] = int(ring.tensor[i, j, k])
        from .ring import fp_dims

        return cls(ring.labels, ring.unit, fp_dims(ring).dims, grading,
                   dual={i: int(ring.dual[i]) for i in range(r)}, known=known)


class SolveResult:
    """Completions found by the solver, grouped into isomorphism classes."""

    def __init__(self, solutions, classes, nodes):
        self.solutions = list(solutions)
        self.classes = [list(c) for c in classes]
        self.nodes = nodes

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def class_representatives(self):
        return [self.solutions[c[0]] for c in self.classes]

    def __repr__(self):
        return "<SolveResult %d solutions in %d classes (%d nodes)>" % (
            len(self.solutions), len(self.classes), self.nodes)


# ---------------------------------------------------------------------------
# dual involutions


def _dual_branches(partial, tol):
    """All involutions consistent with dims, grading, and known entries."""
    r = partial.rank
    d = partial.dims
    g = partial.grading
    known = partial.known
    unit = partial.unit

    forced = {unit: unit}
    if partial.dual:
        for i, j in partial.dual.items():
            forced[int(i)] = int(j)
            forced[int(j)] = int(i)
    for (i, j, k), v in known.items():
        if k == unit and v == 1:
            forced.setdefault(i, j)
            forced.setdefault(j, i)
    for i, j in list(forced.items()):
        if forced.get(j, i) != i:
            return  # inconsistent forcing: no branch at all

    def compatible(i, j):
        if abs(d[i] - d[j]) > tol * max(1.0, d[i]):
            return False
        if g.degree(j) != g.neg(g.degree(i)):
            return False
        if known.get((i, j, unit), 1) == 0 or known.get((j, i, unit), 1) == 0:
            return False
        return True

    sigma = [-1] * r
    for i, j in forced.items():
        if not compatible(i, j):
            return
        sigma[i] = j

    def extend(i):
        while i < r and sigma[i] != -1:
            i += 1
        if i == r:
            yield list(sigma)
            return
        for j in range(i, r):
            if sigma[j] != -1 and j != i:
                continue
            if j in forced and forced[j] != i:
                continue
            if not compatible(i, j):
                continue
            sigma[i], sigma[j] = j, i
            yield from extend(i + 1)
            sigma[i] = -1
            if j != i:
                sigma[j] = -1

    yield from extend(0)


# ---------------------------------------------------------------------------
# orbit state


class _Conflict(Exception):
    pass


class _OverCap(Exception):
    pass


class _State:
    """Search state for one dual branch: values, bounds, orbit variables."""

    def __init__(self, partial, sigma, tol):
        r = partial.rank
        self.r = r
        self.dims = partial.dims
        self.unit = partial.unit
        self.sigma = list(sigma)
        self.tol = tol
        d = partial.dims
        g = partial.grading

        ub = np.floor(np.einsum("i,j,k->ijk", d, d, 1.0 / d) + tol).astype(np.int64)
        degs = np.array([g.degree(i) for i in range(r)], dtype=np.int64)
        orders = np.array(g.orders, dtype=np.int64) if g.orders else None
        if orders is not None:
            bad = (degs[:, None, None, :] + degs[None, :, None, :]
                   - degs[None, None, :, :]) % orders
            ub[np.any(bad != 0, axis=3)] = 0
        self.ub = ub

        # orbit variables
        var_of = np.full((r, r, r), -1, dtype=np.int64)
        orbits = []
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    if var_of[i, j, k] != -1:
                        continue
                    orb = set()
                    stack = [(i, j, k)]
                    while stack:
                        t = stack.pop()
                        if t in orb:
                            continue
                        orb.add(t)
                        a, b, c = t
                        stack.append((sigma[a], c, b))
                        stack.append((c, sigma[b], a))
                    vid = len(orbits)
                    members = tuple(sorted(orb))
                    orbits.append(members)
                    for t in members:
                        var_of[t] = vid
        self.var_of = var_of
        self.orbits = orbits
        nv = len(orbits)

        self.val = np.full((r, r, r), -1, dtype=np.int64)
        self.lo = np.zeros(nv, dtype=np.int64)
        self.hi = np.array([min(int(ub[t]) for t in members) for members in orbits],
                           dtype=np.int64)

        # prefill: unit laws, duality row, known entries, grading zeros
        try:
            for j in range(r):
                for k in range(r):
                    self.set_entry((self.unit, j, k), 1 if j == k else 0)
                    self.set_entry((j, self.unit, k), 1 if j == k else 0)
                    self.set_entry((j, k, self.unit), 1 if k == sigma[j] else 0)
            for t, v in partial.known.items():
                self.set_entry(t, v)
            for v in np.flatnonzero(self.hi == 0):
                self.assign(int(v), 0)
        except _Conflict as exc:
            raise NoSolutionError("inconsistent input: %s" % exc, conflict=str(exc))

    def set_entry(self, t, value):
        v = int(self.var_of[t])
        self.assign(v, value)

    def assign(self, v, value):
        if value < self.lo[v] or value > self.hi[v]:
            raise _Conflict("value %d for %r outside [%d, %d]"
                            % (value, self.orbits[v][0], self.lo[v], self.hi[v]))
        self.lo[v] = self.hi[v] = value
        for t in self.orbits[v]:
            self.val[t] = value

    def tighten(self, v, lo=None, hi=None):
        changed = False
        if lo is not None and lo > self.lo[v]:
            self.lo[v] = lo
            changed = True
        if hi is not None and hi < self.hi[v]:
            self.hi[v] = hi
            changed = True
        if self.lo[v] > self.hi[v]:
            raise _Conflict("empty domain for %r" % (self.orbits[v][0],))
        if changed and self.lo[v] == self.hi[v]:
            self.assign(v, int(self.lo[v]))
        return changed

    def snapshot(self):
        return self.val.copy(), self.lo.copy(), self.hi.copy()

    def restore(self, snap):
        self.val, self.lo, self.hi = snap[0].copy(), snap[1].copy(), snap[2].copy()

    def unassigned(self):
        return np.flatnonzero(self.lo != self.hi)

    # -- propagation ------------------------------------------------------

    def propagate(self):
        while True:
            changed = self._rows_pass()
            changed |= self._assoc_pass()
            if not changed:
                return

    def _row_vars(self, i, j):
        ks = np.flatnonzero(self.val[i, j] < 0)
        coef = {}
        for k in ks:
            v = int(self.var_of[i, j, int(k)])
            coef[v] = coef.get(v, 0.0) + float(self.dims[int(k)])
        return coef

    def _rows_pass(self):
        d = self.dims
        changed = False
        open_rows = np.argwhere((self.val < 0).any(axis=2))
        for i, j in open_rows:
            i, j = int(i), int(j)
            row = self.val[i, j]
            unknown = row < 0
            if not unknown.any():
                continue  # filled by an earlier row in this pass
            target = float(d[i] * d[j]) - float(np.dot(np.where(unknown, 0, row), d))
            coef = self._row_vars(i, j)
            tol = self.tol * max(1.0, float(d[i] * d[j]))
            changed |= self._solve_row(coef, target, tol)
        return changed

    def _solve_row(self, coef, target, tol):
        vars_ = sorted(coef, key=lambda v: -coef[v])
        cs = [coef[v] for v in vars_]
        lo = [int(self.lo[v]) for v in vars_]
        hi = [int(self.hi[v]) for v in vars_]
        n = len(vars_)
        min_tail = [0.0] * (n + 1)
        max_tail = [0.0] * (n + 1)
        for t in range(n - 1, -1, -1):
            min_tail[t] = min_tail[t + 1] + cs[t] * lo[t]
            max_tail[t] = max_tail[t + 1] + cs[t] * hi[t]
        if target < min_tail[0] - tol or target > max_tail[0] + tol:
            raise _Conflict("row sum %.6f unreachable in [%.6f, %.6f]"
                            % (target, min_tail[0], max_tail[0]))

        solutions = []
        cap = 20000
        nodes = [0]

        def rec(t, remaining, partial_vals):
            if nodes[0] > cap:
                raise _OverCap()
            nodes[0] += 1
            if t == n:
                if abs(remaining) <= tol:
                    solutions.append(tuple(partial_vals))
                return
            if remaining < min_tail[t] - tol or remaining > max_tail[t] + tol:
                return
            for x in range(lo[t], hi[t] + 1):
                rec(t + 1, remaining - cs[t] * x, partial_vals + [x])

        try:
            rec(0, target, [])
        except _OverCap:
            # fall back to interval tightening
            changed = False
            for t, v in enumerate(vars_):
                others_min = sum(cs[s] * lo[s] for s in range(n) if s != t)
                others_max = sum(cs[s] * hi[s] for s in range(n) if s != t)
                new_hi = int(np.floor((target - others_min) / cs[t] + tol))
                new_lo = int(np.ceil((target - others_max) / cs[t] - tol))
                changed |= self.tighten(v, max(new_lo, 0), new_hi)
            return changed
        if not solutions:
            raise _Conflict("no integer solution for a row dimension sum")
        changed = False
        for t, v in enumerate(vars_):
            vals = [s[t] for s in solutions]
            changed |= self.tighten(v, min(vals), max(vals))
        return changed

    def _assoc_pass(self):
        val = self.val
        known = val >= 0
        v = np.where(known, val, 0).astype(np.float64)
        w = (v > 0).astype(np.float64)  # known and nonzero
        u = (~known).astype(np.float64)
        uw = u + w

        def lhs_contract(x, y):
            return np.tensordot(x, y, axes=([2], [0]))

        def rhs_contract(x, y):
            return np.tensordot(x, y, axes=([2], [1])).transpose(2, 0, 1, 3)

        occ = (lhs_contract(uw, uw) - lhs_contract(w, w)
               + rhs_contract(uw, uw) - rhs_contract(w, w))
        lhs_v = lhs_contract(v, v)
        rhs_v = rhs_contract(v, v)

        fully = occ == 0
        bad = fully & (lhs_v != rhs_v)
        if bad.any():
            i, j, k, l = (int(x) for x in np.argwhere(bad)[0])
            raise _Conflict("associativity fails at (%d,%d,%d,%d)" % (i, j, k, l))

        changed = False
        for i, j, k, l in np.argwhere(occ == 1):
            i, j, k, l = int(i), int(j), int(k), int(l)
            hit = None
            for m in range(self.r):
                if val[i, j, m] < 0 and v[m, k, l] > 0:
                    hit = (self.var_of[i, j, m], v[m, k, l], +1)
                elif v[i, j, m] > 0 and val[m, k, l] < 0:
                    hit = (self.var_of[m, k, l], v[i, j, m], +1)
                elif val[j, k, m] < 0 and v[i, m, l] > 0:
                    hit = (self.var_of[j, k, m], v[i, m, l], -1)
                elif v[j, k, m] > 0 and val[i, m, l] < 0:
                    hit = (self.var_of[i, m, l], v[j, k, m], -1)
                if hit is not None:
                    break
            if hit is None:
                continue  # stale after an assignment earlier in this pass
            var, coef, side = int(hit[0]), float(hit[1]), hit[2]
            gap = (rhs_v[i, j, k, l] - lhs_v[i, j, k, l]) * side
            value = gap / coef
            if abs(value - round(value)) > 1e-9 or round(value) < 0:
                raise _Conflict(
                    "associativity at (%d,%d,%d,%d) forces non-integer %r"
                    % (i, j, k, l, value))
            if self.lo[var] != self.hi[var]:
                self.assign(var, int(round(value)))
                changed = True
            elif self.lo[var] != int(round(value)):
                raise _Conflict("associativity contradiction at (%d,%d,%d,%d)" % (i, j, k, l))
        return changed


# ---------------------------------------------------------------------------
# search


def _dim_key(state, v):
    i, j, k = state.orbits[v][0]
    d = state.dims
    return (float(d[i] * d[j]), float(d[k]), (i, j, k))


def _search(state, out, cap, counter, conflicts):
    try:
        state.propagate()
    except _Conflict as exc:
        conflicts.append(str(exc))
        return
    free = state.unassigned()
    if len(free) == 0:
        out.append(state.val.copy())
        return
    v = min(free, key=lambda x: (int(state.hi[x] - state.lo[x]), _dim_key(state, int(x))))
    v = int(v)
    snap = state.snapshot()
    for value in range(int(state.lo[v]), int(state.hi[v]) + 1):
        counter[0] += 1
        if counter[0] > cap:
            raise SearchCapExceededError("search cap %d exceeded" % cap)
        try:
            state.assign(v, value)
            _search(state, out, cap, counter, conflicts)
        except _Conflict as exc:
            conflicts.append(str(exc))
        state.restore(snap)


def _canonical_key(tensor, dims, unit, cap=40320):
    """Deterministic key: minimal serialization over dim-sorted relabelings."""
    r = tensor.shape[0]
    buckets = {}
    for i in range(r):
        if i == unit:
            continue
        buckets.setdefault(round(float(dims[i]) * 1e6), []).append(i)
    total = 1
    for b in buckets.values():
        f = 1
        for t in range(2, len(b) + 1):
            f *= t
        total *= f
        if total > cap:
            return tensor.tobytes()
    best = None
    groups = sorted(buckets.values())
    for perm_parts in _product_perms(groups):
        perm = list(range(r))
        for orig, new in perm_parts:
            for a, b in zip(orig, new):
                perm[a] = b
        p = np.array(perm)
        inv = np.empty(r, dtype=np.int64)
        inv[p] = np.arange(r)
        key = tensor[np.ix_(inv, inv, inv)].tobytes()
        if best is None or key < best:
            best = key
    return best


def _product_perms(groups):
    if not groups:
        yield []
        return
    head, rest = groups[0], groups[1:]
    for p in permutations(head):
        for tail in _product_perms(rest):
            yield [(head, p)] + tail


def complete_partial_ring(partial, search_cap=10_000_000):
    """All completions of a partial ring, grouped into isomorphism classes.

    Returns a SolveResult whose solutions all pass verify_axioms, extend the
    known entries exactly, match the target dims within tolerance and respect
    the grading.  Raises NoSolutionError (with the first conflict) if there
    are none, SearchCapExceededError past the node budget.
    """
    tol = config.tolerance()
    raw = []
    counter = [0]
    conflicts = []
    for sigma in _dual_branches(partial, tol):
        try:
            state = _State(partial, sigma, tol)
        except NoSolutionError as exc:
            conflicts.append(str(exc))
            continue
        tensors = []
        _search(state, tensors, search_cap, counter, conflicts)
        for t in tensors:
            raw.append((t, sigma))

    d = partial.dims
    solutions = []
    seen = set()
    for tensor, sigma in raw:
        key = (tensor.tobytes(), tuple(sigma))
        if key in seen:
            continue
        seen.add(key)
        ring = FusionRing(partial.labels, partial.unit, sigma, tensor, partial.grading)
        rep = verify_axioms(ring)
        if not rep.ok:
            continue
        residual = float(np.max(np.abs(
            np.outer(d, d) - np.einsum("ijk,k->ij", tensor.astype(np.float64), d))))
        if residual > tol * float(d.max()) ** 2:
            continue
        solutions.append(ring)
    if not solutions:
        raise NoSolutionError(
            "no completion satisfies the constraints",
            conflict=conflicts[0] if conflicts else "empty search space")

    solutions.sort(key=lambda ring: (
        _canonical_key(ring.tensor, d, partial.unit),
        ring.tensor.tobytes(),
        tuple(int(x) for x in ring.dual),
    ))
    classes = []
    reps = []
    for idx, ring in enumerate(solutions):
        for c, rep_ring in zip(classes, reps):
            if find_isomorphisms(rep_ring, ring, max_count=1):
                c.append(idx)
                break
        else:
            classes.append([idx])
            reps.append(ring)
    return SolveResult(solutions, classes, counter[0])


# ---------------------------------------------------------------------------
# generator graphs


def _perron_vector(adj):
    a = np.asarray(adj, dtype=np.float64)
    n = a.shape[0]
    shifted = a + np.eye(n)
    v = np.ones(n)
    for _ in range(200000):
        w = shifted @ v
        w /= w.max()
        if np.max(np.abs(w - v)) < 1e-13:
            return w
        v = w
    raise NoSolutionError("Perron iteration did not converge")


def _bipartition(adj):
    n = adj.shape[0]
    color = [-1] * n
    color[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for w in np.flatnonzero(adj[u]):
            w = int(w)
            if color[w] == -1:
                color[w] = 1 - color[u]
                stack.append(w)
            elif color[w] == color[u]:
                return None
    if any(c == -1 for c in color):
        raise MalformedRingError("generator graph must be connected")
    return color


def ring_from_generator_graph(graph, unit=0, labels=None, search_cap=10_000_000):
    """All fusion rings whose designated generator has the given fusion graph.

    The graph fixes the generator's full fusion row N_{g x}^y = A[x][y]; the
    unit's unique neighbor is the generator; dims are the Perron vector
    normalized at the unit; a bipartition (if one exists) provides the parity
    grading.  Everything else is delegated to complete_partial_ring.
    """
    adj = graph.adjacency() if isinstance(graph, Digraph) else np.asarray(graph, dtype=np.int64)
    n = adj.shape[0]
    unit = int(unit)
    nbrs = np.flatnonzero(adj[unit])
    if len(nbrs) != 1 or adj[unit, nbrs[0]] != 1:
        raise MalformedRingError("unit must have a unique, multiplicity-1 neighbor")
    gen = int(nbrs[0])
    dims = _perron_vector(adj)
    dims = dims / dims[unit]
    if labels is None:
        labels = ["v%d" % i for i in range(n)]
    color = _bipartition(adj | adj.T if (adj != adj.T).any() else adj)
    if color is not None and color[unit] != 0:
        color = [1 - c for c in color]
    if color is None:
        grading = Grading((), [() for _ in range(n)])
    else:
        grading = Grading((2,), [(c,) for c in color])
    known = {}
    for x in range(n):
        for y in range(n):
            known[(gen, x, y)] = int(adj[x, y])
    partial = PartialRing(labels, unit, dims, grading, known=known)
    result = complete_partial_ring(partial, search_cap=search_cap)
    return list(result.solutions)


def unique_ring_from_graph(graph, unit=0, labels=None, search_cap=10_000_000):
    """ring_from_generator_graph with a per-instance uniqueness assertion."""
    rings = ring_from_generator_graph(graph, unit, labels, search_cap)
    classes = []
    for ring in rings:
        for rep in classes:
            if find_isomorphisms(rep, ring, max_count=1):
                break
        else:
            classes.append(ring)
    if len(classes) != 1:
        raise NonUniqueCompletionError(
            "generator graph admits %d non-isomorphic completions" % len(classes))
    return rings[0]


# ---------------------------------------------------------------------------
# module actions


class ModuleAction:
    """Nonnegative-integer action of a base ring on a module basis.

    ``matrices[a][x, y]`` is the multiplicity of module object y in a (x) x.
    """

    def __init__(self, base, module_dims, matrices):
        self.base = base
        self.module_dims = np.asarray(module_dims, dtype=np.float64)
        self.matrices = [np.asarray(m, dtype=np.int64) for m in matrices]
        for m in self.matrices:
            m.setflags(write=False)

    @property
    def module_rank(self):
        return len(self.module_dims)

    def action_graph(self, a):
        """Digraph of the action of base simple a (edge x -> y, mult T_a[x,y])."""
        t = self.matrices[a]
        edges = {}
        for x, y in np.argwhere(t > 0):
            edges[(int(x), int(y))] = int(t[x, y])
        return Digraph(len(self.module_dims), edges)

    def __repr__(self):
        return "<ModuleAction base rank %d on %d objects>" % (
            self.base.rank, self.module_rank)


class _ModuleState:
    def __init__(self, base, module_dims, tol, fixed):
        self.base = base
        self.nb = base.rank
        self.nm = len(module_dims)
        self.md = np.asarray(module_dims, dtype=np.float64)
        self.tol = tol
        from .ring import fp_dims

        self.bd = fp_dims(base).dims
        self.t = np.full((self.nb, self.nm, self.nm), -1, dtype=np.int64)
        ub = np.floor(np.einsum("a,x,y->axy", self.bd, self.md, 1.0 / self.md) + tol)
        self.ub = ub.astype(np.int64)
        try:
            for x in range(self.nm):
                for y in range(self.nm):
                    self.set_entry(base.unit, x, y, 1 if x == y else 0)
            for (a, x, y), v in fixed.items():
                self.set_entry(a, x, y, v)
            zero = (self.ub == 0) & (self.t < 0)
            for a, x, y in np.argwhere(zero):
                self.set_entry(int(a), int(x), int(y), 0)
        except _Conflict as exc:
            raise NoSolutionError("inconsistent module input: %s" % exc, conflict=str(exc))

    def set_entry(self, a, x, y, v):
        if v < 0 or v > self.ub[a, x, y]:
            raise _Conflict("module entry (%d,%d,%d)=%d outside bounds" % (a, x, y, v))
        if self.t[a, x, y] >= 0 and self.t[a, x, y] != v:
            raise _Conflict("module entry (%d,%d,%d) conflict" % (a, x, y))
        self.t[a, x, y] = v

    def propagate(self):
        changed = True
        while changed:
            changed = self._rows_pass() | self._compose_pass()

    def _rows_pass(self):
        changed = False
        for a in range(self.nb):
            for x in range(self.nm):
                row = self.t[a, x]
                unknown = row < 0
                if not unknown.any():
                    resid = float(self.bd[a] * self.md[x] - np.dot(row, self.md))
                    if abs(resid) > self.tol * max(1.0, self.bd[a] * self.md[x]):
                        raise _Conflict("module row (%d,%d) dim sum off" % (a, x))
                    continue
                target = float(self.bd[a] * self.md[x]) - float(
                    np.dot(np.where(unknown, 0, row), self.md))
                ys = np.flatnonzero(unknown)
                tol = self.tol * max(1.0, float(self.bd[a] * self.md[x]))
                sols = self._enumerate(ys, [float(self.md[y]) for y in ys],
                                       [int(self.ub[a, x, y]) for y in ys], target, tol)
                if sols is None:
                    continue
                if not sols:
                    raise _Conflict("module row (%d,%d) has no completion" % (a, x))
                for pos, y in enumerate(ys):
                    vals = {s[pos] for s in sols}
                    if len(vals) == 1:
                        self.set_entry(a, x, int(y), vals.pop())
                        changed = True
        return changed

    @staticmethod
    def _enumerate(ys, coefs, ubs, target, tol, cap=20000):
        order = sorted(range(len(ys)), key=lambda p: -coefs[p])
        coefs = [coefs[p] for p in order]
        ubs = [ubs[p] for p in order]
        n = len(order)
        max_tail = [0.0] * (n + 1)
        for t in range(n - 1, -1, -1):
            max_tail[t] = max_tail[t + 1] + coefs[t] * ubs[t]
        out = []
        nodes = [0]

        def rec(t, remaining, acc):
            if nodes[0] > cap:
                raise _OverCap()
            nodes[0] += 1
            if t == n:
                if abs(remaining) <= tol:
                    out.append(acc)
                return
            if remaining < -tol or remaining > max_tail[t] + tol:
                return
            for xv in range(ubs[t] + 1):
                rec(t + 1, remaining - coefs[t] * xv, acc + [xv])

        try:
            rec(0, target, [])
        except _OverCap:
            return None
        # undo the ordering
        fixed = []
        for s in out:
            orig = [0] * n
            for p, v in zip(order, s):
                orig[p] = v
            fixed.append(orig)
        return fixed

    def _compose_pass(self):
        # sum_c N_{ab}^c T_c[x,z] = sum_y T_b[x,y] T_a[y,z]
        t = self.t
        known = t >= 0
        v = np.where(known, t, 0).astype(np.float64)
        w = (v > 0).astype(np.float64)
        u = (~known).astype(np.float64)
        nb, nm = self.nb, self.nm
        nt = self.base.tensor.astype(np.float64)

        # left side: L[a,b,x,z] = sum_c N[a,b,c] (t[c,x,z])
        def left(x3):
            return np.tensordot(nt, x3, axes=([2], [0]))

        # right side: R[a,b,x,z] = sum_y t[b,x,y] t[a,y,z]
        def right(x3, y3):
            return np.tensordot(x3, y3, axes=([2], [1])).transpose(3, 0, 1, 2)

        lv = left(v)
        lo = left(u)              # occurrences on the left (N is fully known)
        rv = right(v, v)
        ro = right(u + w, u + w) - right(w, w)
        occ = lo + ro
        fully = occ == 0
        bad = fully & (lv != rv)
        if bad.any():
            a, b, x, z = (int(q) for q in np.argwhere(bad)[0])
            raise _Conflict("module composition fails at (%d,%d,%d,%d)" % (a, b, x, z))
        changed = False
        for a, b, x, z in np.argwhere(occ == 1):
            a, b, x, z = int(a), int(b), int(x), int(z)
            hit = None
            for c in range(self.nb):
                if nt[a, b, c] > 0 and t[c, x, z] < 0:
                    hit = ((c, x, z), nt[a, b, c], +1)
                    break
            if hit is None:
                for y in range(nm):
                    if t[b, x, y] < 0 and v[a, y, z] > 0:
                        hit = ((b, x, y), v[a, y, z], -1)
                        break
                    if v[b, x, y] > 0 and t[a, y, z] < 0:
                        hit = ((a, y, z), v[b, x, y], -1)
                        break
            if hit is None:
                continue
            (ea, ex, ey), coef, side = hit
            gap = (rv[a, b, x, z] - lv[a, b, x, z]) * side
            value = gap / float(coef)
            if abs(value - round(value)) > 1e-9 or round(value) < 0:
                raise _Conflict("module composition forces non-integer at (%d,%d,%d,%d)"
                                % (a, b, x, z))
            if self.t[ea, ex, ey] < 0:
                self.set_entry(ea, ex, ey, int(round(value)))
                changed = True
        return changed

    def snapshot(self):
        return self.t.copy()

    def restore(self, snap):
        self.t = snap.copy()


def solve_module(base, module_dims, generator_row=None, generator=None,
                 search_cap=10_000_000):
    """All actions of ``base`` on a module basis with the given dimensions.

    ``generator_row``: optional action matrix to fix for the designated base
    generator (the smallest-dimension non-unit simple unless ``generator``
    names an index).  Found by the same staged propagation plus bounded
    enumeration; results are deduped by module-basis permutation.
    """
    rep = verify_axioms(base)
    if not rep.ok:
        raise MalformedRingError("base ring fails axioms: %s" % rep)
    tol = config.tolerance()
    from .ring import fp_dims

    bd = fp_dims(base).dims
    fixed = {}
    if generator_row is not None:
        if generator is None:
            cands = [i for i in range(base.rank) if i != base.unit]
            generator = min(cands, key=lambda i: (float(bd[i]), i))
        mat = np.asarray(generator_row, dtype=np.int64)
        for x in range(mat.shape[0]):
            for y in range(mat.shape[1]):
                fixed[(int(generator), x, y)] = int(mat[x, y])

    state = _ModuleState(base, module_dims, tol, fixed)
    out = []
    counter = [0]

    def search():
        try:
            state.propagate()
        except _Conflict:
            return
        free = np.argwhere(state.t < 0)
        if len(free) == 0:
            out.append(state.t.copy())
            return
        # narrowest bound first, then smallest base dimension
        a, x, y = min(
            (tuple(int(q) for q in f) for f in free),
            key=lambda f: (int(state.ub[f]), float(state.bd[f[0]]), f))
        snap = state.snapshot()
        for value in range(int(state.ub[a, x, y]) + 1):
            counter[0] += 1
            if counter[0] > search_cap:
                raise SearchCapExceededError("module search cap exceeded")
            try:
                state.set_entry(a, x, y, value)
                search()
            except _Conflict:
                pass
            state.restore(snap)

    search()
    if not out:
        raise NoSolutionError("no module action satisfies the constraints")

    # dedupe by module-basis permutations (dimension-preserving)
    md = np.asarray(module_dims, dtype=np.float64)
    buckets = {}
    for x in range(len(md)):
        buckets.setdefault(round(float(md[x]) * 1e6), []).append(x)

    def canon(tens):
        best = None
        for perm_parts in _product_perms(sorted(buckets.values())):
            perm = list(range(len(md)))
            for orig, new in perm_parts:
                for p, q in zip(orig, new):
                    perm[p] = q
            p = np.array(perm)
            inv = np.empty(len(md), dtype=np.int64)
            inv[p] = np.arange(len(md))
            key = tens[:, inv][:, :, inv].tobytes()
            if best is None or key < best:
                best = key
        return best

    seen = {}
    for tens in out:
        seen.setdefault(canon(tens), tens)
    actions = []
    for key in sorted(seen):
        actions.append(ModuleAction(base, module_dims, list(seen[key])))
    return actions
