"""Weight modules with one-dimensional weight spaces.

A module here is a coefficient rule c(n,k) acting by L_n v_k = c(n,k) v_{k+n}
on basis vectors indexed by Z.  The defining axiom, checked everywhere by
`relation_residual`, is

    p^{-n} q^n L_n L_m - p^{-m} q^m L_m L_n = ([m]/p^m - [n]/p^n) L_{m+n}

and the central element acts as zero on every family.

Families:

* mab(a, b)     -- the two-parameter family
* alpha(t)      -- one-parameter exception with special target index -1
* alphap(t)     -- one-parameter exception with special source index -n
* beta(t)       -- mirror of alpha with special target index +1
* betap(t)      -- mirror of alphap; its exceptional line is shipped in the
                   adjudicated reading (see `ExcBetaPrime`), the catalogued
                   variant is kept for audits
* table(...)    -- explicit finite map, for counterexamples and fuzzing
"""

from __future__ import annotations

from fractions import Fraction

from .report import ResidualReport
from .scalar import RationalFunction, parse_rational, scalar_str


def _coerce(ctx, v):
    """Accept ints, Fractions, rational strings, or backend scalars."""
    if isinstance(v, RationalFunction):
        if ctx.backend != "symbolic":
            raise ValueError("symbolic parameter in a numeric context")
        return v
    if isinstance(v, (int, Fraction)):
        return ctx.from_fraction(Fraction(v))
    if isinstance(v, str):
        return ctx.from_fraction(parse_rational(v))
    return v


class CoefficientRule:
    """Base class: a family name, parameters and the coefficient function."""

    family = "abstract"

    def coeff(self, ctx, n, k):
        raise NotImplementedError

    def params(self):
        return {}

    def describe(self):
        ps = ",".join("%s=%s" % (k, scalar_str(v))
                      for k, v in sorted(self.params().items()))
        return "%s:%s" % (self.family, ps) if ps else self.family


class Mab(CoefficientRule):
    """c(n,k) = p^{-k}[k] - a p^{-k} q^k - b p^{-k-n} q^k [n]."""

    family = "mab"

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def coeff(self, ctx, n, k):
        a = _coerce(ctx, self.a)
        b = _coerce(ctx, self.b)
        pk = ctx.p ** (-k)
        qk = ctx.q ** k
        return pk * ctx.qint(k) - a * pk * qk - b * pk * ctx.p ** (-n) * qk * ctx.qint(n)

    def params(self):
        return {"a": self.a, "b": self.b}


class ExcAlpha(CoefficientRule):
    """c(n,k) = p^{-n-k-1}[n+k+1] away from k=-1;
    c(n,-1) = -q^n[-n] + [-n][n+1] p^{-n} q^n * alpha."""

    family = "alpha"

    def __init__(self, alpha):
        self.alpha = alpha

    def coeff(self, ctx, n, k):
        if k != -1:
            return ctx.p ** (-n - k - 1) * ctx.qint(n + k + 1)
        t = _coerce(ctx, self.alpha)
        return (-ctx.q ** n * ctx.qint(-n)
                + ctx.qint(-n) * ctx.qint(n + 1) * ctx.p ** (-n) * ctx.q ** n * t)

    def params(self):
        return {"alpha": self.alpha}


class ExcAlphaPrime(CoefficientRule):
    """c(n,k) = p^{-k}[k] away from k=-n;
    c(n,-n) = p^n[-n] + p^n q^{-n} [-n][n+1] * alphap."""

    family = "alphap"

    def __init__(self, alphap):
        self.alphap = alphap

    def coeff(self, ctx, n, k):
        if k != -n:
            return ctx.p ** (-k) * ctx.qint(k)
        t = _coerce(ctx, self.alphap)
        return (ctx.p ** n * ctx.qint(-n)
                + ctx.p ** n * ctx.q ** (-n) * ctx.qint(-n) * ctx.qint(n + 1) * t)

    def params(self):
        return {"alphap": self.alphap}


class ExcBeta(CoefficientRule):
    """c(n,k) = -q^{n+k-1}[-n-k+1] away from k=1;
    c(n,1) = -q^n[-n] + p^{-n} q^n [n][-n+1] * beta."""

    family = "beta"

    def __init__(self, beta):
        self.beta = beta

    def coeff(self, ctx, n, k):
        if k != 1:
            return -(ctx.q ** (n + k - 1)) * ctx.qint(-n - k + 1)
        t = _coerce(ctx, self.beta)
        return (-ctx.q ** n * ctx.qint(-n)
                + ctx.p ** (-n) * ctx.q ** n * ctx.qint(n) * ctx.qint(-n + 1) * t)

    def params(self):
        return {"beta": self.beta}


class ExcBetaPrime(CoefficientRule):
    """c(n,k) = p^{-k}[k] away from k=-n; exceptional line on k=-n.

    Two candidate readings exist for the bracket pair in the exceptional
    coefficient.  The catalogued form [n][n+1] fails the module axiom at
    generator triples unless pq = 1; the adjudicated form [n][-n+1]
    (mirroring `ExcBeta`) passes it identically, so it is the default.
    `reading="given"` keeps the catalogued variant available to audits.
    """

    family = "betap"

    def __init__(self, betap, reading="adjusted"):
        if reading not in ("adjusted", "given"):
            raise ValueError("reading must be 'adjusted' or 'given'")
        self.betap = betap
        self.reading = reading

    def coeff(self, ctx, n, k):
        if k != -n:
            return ctx.p ** (-k) * ctx.qint(k)
        t = _coerce(ctx, self.betap)
        if self.reading == "given":
            pair = ctx.qint(n) * ctx.qint(n + 1)
        else:
            pair = ctx.qint(n) * ctx.qint(-n + 1)
        return (ctx.p ** n * ctx.qint(-n)
                + ctx.p ** n * ctx.q ** (-n) * pair * t)

    def params(self):
        out = {"betap": self.betap}
        if self.reading != "adjusted":
            out["reading"] = self.reading
        return out


class TableRule(CoefficientRule):
    """Explicit finite coefficient map; queries outside it are an error."""

    family = "table"

    def __init__(self, entries, window):
        self.entries = dict(entries)
        self.window = int(window)

    def coeff(self, ctx, n, k):
        if (n, k) not in self.entries:
            raise ValueError("table rule queried outside its window: (%d,%d)" % (n, k))
        return _coerce(ctx, self.entries[(n, k)])

    def params(self):
        return {"window": self.window, "size": len(self.entries)}


_FAMILIES = {
    "mab": (Mab, ("a", "b")),
    "alpha": (ExcAlpha, ("alpha",)),
    "alphap": (ExcAlphaPrime, ("alphap",)),
    "beta": (ExcBeta, ("beta",)),
    "betap": (ExcBetaPrime, ("betap",)),
}

# accepted aliases in family spec strings, e.g. alphap:α'=1/2
_PARAM_ALIASES = {
    "α": "alpha", "β": "beta", "α'": "alphap", "β'": "betap",
    "a'": "alphap", "b'": "betap",
}


def parse_family(spec):
    """Parse 'mab:a=1/3,b=-2' / 'alpha:α=0' ... into a CoefficientRule."""
    text = spec.strip()
    name, _, rest = text.partition(":")
    name = name.strip()
    if name not in _FAMILIES:
        raise ValueError("unknown family %r (expected one of %s)"
                         % (name, "/".join(sorted(_FAMILIES))))
    cls, fields = _FAMILIES[name]
    given = {}
    if rest.strip():
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError("bad family parameter %r" % item)
            key = key.strip()
            key = _PARAM_ALIASES.get(key, key)
            if len(fields) == 1 and key in ("param", "t"):
                key = fields[0]
            if key not in fields:
                raise ValueError("family %s has no parameter %r" % (name, key))
            given[key] = parse_rational(val)
    missing = [f for f in fields if f not in given]
    if missing:
        raise ValueError("family %s missing parameters: %s" % (name, missing))
    return cls(*[given[f] for f in fields])


def coeff(ctx, rule, n, k):
    return rule.coeff(ctx, int(n), int(k))


class WindowedVector:
    """Sparse vector supported on |k| <= window, no stored zeros."""

    __slots__ = ("window", "entries")

    def __init__(self, window, entries=None):
        self.window = int(window)
        self.entries = {}
        if entries:
            for k, c in entries.items():
                if abs(int(k)) > self.window:
                    raise ValueError("index %d outside window %d" % (k, self.window))
                if not _is_zero(c):
                    self.entries[int(k)] = c

    @staticmethod
    def basis(ctx, window, k):
        return WindowedVector(window, {k: ctx.one})

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if self.window != other.window:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(
            not _is_zero(self.entries.get(k, 0) - other.entries.get(k, 0))
            for k in keys)

    def __str__(self):
        if not self.entries:
            return "0"
        return " + ".join("%s·v[%d]" % (scalar_str(self.entries[k]), k)
                          for k in sorted(self.entries))


def _is_zero(x):
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def act(ctx, rule, n, v):
    """L_n applied to a windowed vector; overflow past the window is an error."""
    out = {}
    for k in sorted(v.entries):
        c = rule.coeff(ctx, n, k) * v.entries[k]
        if _is_zero(c):
            continue
        if abs(k + n) > v.window:
            raise ValueError(
                "action leaves the window: v[%d] -> v[%d] (window %d); widen it"
                % (k, k + n, v.window))
        out[k + n] = out.get(k + n, ctx.zero) + c
    return WindowedVector(v.window, out)


def relation_residual(ctx, rule, n, m, k):
    """Defining-axiom residual on v_k for the generator pair (n, m)."""
    pn = ctx.p ** (-n) * ctx.q ** n
    pm = ctx.p ** (-m) * ctx.q ** m
    lhs = (pn * rule.coeff(ctx, m, k) * rule.coeff(ctx, n, m + k)
           - pm * rule.coeff(ctx, n, k) * rule.coeff(ctx, m, n + k))
    rhs = (ctx.qint(m) * ctx.p ** (-m) - ctx.qint(n) * ctx.p ** (-n)) \
        * rule.coeff(ctx, n + m, k)
    return lhs - rhs


def verify_module(ctx, rule, nmax, kmax, pair_filter="all"):
    """Sweep relation_residual over the window; returns a ResidualReport."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    if kmax < nmax:
        raise ValueError("kmax must be >= nmax")
    if pair_filter not in ("all", "generators"):
        raise ValueError("pair_filter must be 'all' or 'generators'")
    rep = ResidualReport("verify-module", {
        "family": rule.describe(), "nmax": int(nmax), "kmax": int(kmax),
        "pair_filter": pair_filter, **ctx.describe()})
    for n in range(-nmax, nmax + 1):
        for m in range(-nmax, nmax + 1):
            if pair_filter == "generators":
                if not (-2 <= n <= 2 and -2 <= m <= 2 and -2 <= n + m <= 2):
                    continue
            for k in range(-kmax, kmax + 1):
                rep.record("module-relation", (n, m, k),
                           relation_residual(ctx, rule, n, m, k))
    return rep


def weight(ctx, rule, k):
    """Eigenvalue of L_0 on v_k."""
    return rule.coeff(ctx, 0, k)


def weight_injective(ctx, a, window):
    """Whether k -> weight is injective on the window for the mab family.

    Closed form: a != -1/(p-q).  The brute-force distinctness scan is run
    as well; the two must agree under the context guard.
    """
    a = _coerce(ctx, a)
    closed = not _is_zero(a + 1 / (ctx.p - ctx.q))
    rule = Mab(a, ctx.zero)
    seen = [rule.coeff(ctx, 0, k) for k in range(-window, window + 1)]
    brute = all(
        not _is_zero(seen[i] - seen[j])
        for i in range(len(seen)) for j in range(i + 1, len(seen)))
    if closed != brute:
        raise AssertionError("weight injectivity: closed form and scan disagree")
    return closed


def _edges(ctx, rule, window):
    """Directed action graph on indices |k| <= window (all n, not just ±1,±2)."""
    adj = {k: [] for k in range(-window, window + 1)}
    for k in range(-window, window + 1):
        for t in range(-window, window + 1):
            n = t - k
            if n == 0:
                continue
            if not _is_zero(rule.coeff(ctx, n, k)):
                adj[k].append(t)
    return adj


def _sccs(adj):
    """Tarjan strongly connected components, iterative."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = [0]
    for root in sorted(adj):
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    v = stack.pop()
                    on_stack.discard(v)
                    comp.append(v)
                    if v == node:
                        break
                comps.append(sorted(comp))
    return comps


SUBMODULE_CAP = 2 ** 12


def find_submodules(ctx, rule, window):
    """All proper nonempty index sets closed under the action, within window."""
    return find_submodules_ex(ctx, rule, window)[0]


def find_submodules_ex(ctx, rule, window):
    """(subsets, truncated).  Condenses the action graph into strongly
    connected components and enumerates subsets of components closed under
    outgoing edges.  Capped at SUBMODULE_CAP results; windows used here keep
    it far below the cap unless the rule has no edges at all.
    """
    window = int(window)
    adj = _edges(ctx, rule, window)
    comps = _sccs(adj)
    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    nc = len(comps)
    succ = [0] * nc
    for k, outs in adj.items():
        for t in outs:
            if comp_of[t] != comp_of[k]:
                succ[comp_of[k]] |= 1 << comp_of[t]
    results = []
    full = (1 << nc) - 1
    truncated = False
    for mask in range(1, full):
        ok = True
        mm = mask
        while mm:
            i = (mm & -mm).bit_length() - 1
            if succ[i] & ~mask:
                ok = False
                break
            mm &= mm - 1
        if not ok:
            continue
        members = []
        for i in range(nc):
            if mask >> i & 1:
                members.extend(comps[i])
        results.append(sorted(members))
        if len(results) >= SUBMODULE_CAP:
            truncated = True
            break
    results.sort(key=lambda s: (len(s), s))
    return results, truncated


def is_reducible_closed_form(ctx, a, b, mmax):
    """Witness m with a = -p^{-m}[m] and b in {-p^{-m} q^m, 0}, if any."""
    a = _coerce(ctx, a)
    b = _coerce(ctx, b)
    if _is_zero(a + 1 / (ctx.p - ctx.q)):
        raise ValueError("a = -1/(p-q) is outside this criterion's domain")
    for m in sorted(range(-int(mmax), int(mmax) + 1), key=lambda x: (abs(x), x)):
        if not _is_zero(a + ctx.p ** (-m) * ctx.qint(m)):
            continue
        if _is_zero(b) or _is_zero(b + ctx.p ** (-m) * ctx.q ** m):
            return m
    return None


def shift_params(ctx, a, b, m):
    """Parameters of the isomorphic copy under index shift by m."""
    a = _coerce(ctx, a)
    b = _coerce(ctx, b)
    scale = ctx.p ** m * ctx.q ** (-m)
    return ((a + ctx.p ** (-m) * ctx.qint(m)) * scale, b * scale)


def find_intertwiner(ctx, ruleA, ruleB, m, window):
    """Diagonal intertwiner h with h_{k+n} cA(n,k) = h_k cB(n,k+m), or None.

    Propagates h from h_0 = 1 along the n=1 constraints, branching with a
    fresh unit scale when a chain decouples (both adjacent coefficients
    zero), then validates every constraint with |n| <= 2 inside the window.
    """
    window = int(window)
    h = {0: ctx.one}
    for k in range(0, window):
        ca = ruleA.coeff(ctx, 1, k)
        cb = ruleB.coeff(ctx, 1, k + m)
        if _is_zero(ca) and _is_zero(cb):
            h[k + 1] = ctx.one
        elif _is_zero(ca) or _is_zero(cb):
            return None
        else:
            h[k + 1] = h[k] * cb / ca
    for k in range(0, -window, -1):
        ca = ruleA.coeff(ctx, 1, k - 1)
        cb = ruleB.coeff(ctx, 1, k - 1 + m)
        if _is_zero(ca) and _is_zero(cb):
            h[k - 1] = ctx.one
        elif _is_zero(ca) or _is_zero(cb):
            return None
        else:
            h[k - 1] = h[k] * ca / cb
    for n in range(-2, 3):
        for k in range(-window, window + 1):
            if abs(k + n) > window:
                continue
            lhs = h[k + n] * ruleA.coeff(ctx, n, k)
            rhs = h[k] * ruleB.coeff(ctx, n, k + m)
            if not _is_zero(lhs - rhs):
                return None
    return h
