# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled engine kernels; semantics identical to owflab._engine_py.

Status codes:
  step kind:      0 unique, 1 stuck, 2 ambiguous, 3 branch overflow
  closure status: 0 terminal, 1 ambiguous, 2 budget exceeded, 3 overflow
"""

STEP_UNIQUE = 0
STEP_STUCK = 1
STEP_AMBIGUOUS = 2
STEP_OVERFLOW = 3

CLOSE_TERMINAL = 0
CLOSE_AMBIGUOUS = 1
CLOSE_BUDGET = 2
CLOSE_OVERFLOW = 3


class _Overflow(Exception):
    pass


def backend_name():
    return "compiled"


# --- semi-Thue ------------------------------------------------------------

def st_find_matches(lhs, w):
    """All (position, rule index) pairs, sorted by (position, rule)."""
    cdef Py_ssize_t i, p, start
    cdef list out = []
    cdef str ws = w
    cdef str g
    for i in range(len(lhs)):
        g = lhs[i]
        start = 0
        while True:
            p = ws.find(g, start)
            if p < 0:
                break
            out.append((p, i))
            start = p + 1
    out.sort()
    return out


cdef list _st_successors(list lhs, list rhs, str w):
    cdef set seen = set()
    cdef list out = []
    cdef Py_ssize_t p, i
    cdef str y
    for p, i in st_find_matches(lhs, w):
        y = w[:p] + <str>rhs[i] + w[p + len(<str>lhs[i]):]
        if y not in seen:
            seen.add(y)
            out.append((y, p, i))
    return out


cdef bint _st_alive(list lhs, list rhs, str s, Py_ssize_t ref_len,
                    Py_ssize_t max_branch, Py_ssize_t node_budget,
                    dict memo) except? -1:
    got = memo.get(s)
    if got is not None:
        return got
    cdef list stack = [s]
    cdef set visited = {s}
    cdef dict parent = {s: None}
    cdef Py_ssize_t budget = node_budget
    cdef str w, y
    cdef list succ
    while stack:
        w = stack.pop()
        succ = _st_successors(lhs, rhs, w)
        if len(succ) > max_branch:
            raise _Overflow
        if not succ:
            if len(w) == ref_len:
                node = w
                while node is not None:
                    memo[node] = True
                    node = parent[node]
                return True
            continue
        for y, _, _ in succ:
            if y in visited:
                continue
            cached = memo.get(y)
            if cached is False:
                continue
            if cached:
                node = w
                while node is not None:
                    memo[node] = True
                    node = parent[node]
                return True
            budget -= 1
            if budget < 0:
                return True  # unproven; do not cache
            visited.add(y)
            parent[y] = w
            stack.append(y)
    for w in visited:
        memo[w] = False
    return False


def st_step(lhs, rhs, w, mode, depth, max_branch, ref_len=-1, memo=None):
    """One deterministic rewrite step.  mode: 0 strict, 1 lookahead."""
    cdef list llhs = list(lhs)
    cdef list lrhs = list(rhs)
    cdef Py_ssize_t p, i, k, rl, node_budget
    cdef str y
    if mode == 0:
        matches = st_find_matches(llhs, w)
        if not matches:
            return (STEP_STUCK, w, -1, -1, 0)
        if len(matches) == 1:
            p, i = matches[0]
            y = w[:p] + <str>lrhs[i] + w[p + len(<str>llhs[i]):]
            return (STEP_UNIQUE, y, p, i, 1)
        return (STEP_AMBIGUOUS, w, -1, -1, len(matches))
    cdef list succ = _st_successors(llhs, lrhs, w)
    if not succ:
        return (STEP_STUCK, w, -1, -1, 0)
    if len(succ) == 1:
        y, p, i = succ[0]
        return (STEP_UNIQUE, y, p, i, 1)
    if len(succ) > max_branch:
        return (STEP_OVERFLOW, w, -1, -1, len(succ))
    rl = ref_len
    if rl < 0:
        rl = len(w)
    cdef dict m = memo if memo is not None else {}
    node_budget = max_branch * (depth + 1)
    cdef list survivors = []
    try:
        for k in range(len(succ)):
            y = succ[k][0]
            if _st_alive(llhs, lrhs, y, rl, max_branch, node_budget, m):
                survivors.append(k)
                if len(survivors) > 1:
                    break
    except _Overflow:
        return (STEP_OVERFLOW, w, -1, -1, len(succ))
    if len(survivors) == 1:
        y, p, i = succ[survivors[0]]
        return (STEP_UNIQUE, y, p, i, 1)
    return (STEP_AMBIGUOUS, w, -1, -1, len(succ))


def st_closure(lhs, rhs, w, budget, mode, depth, max_branch,
               want_trace=False, work_limit=0):
    """Iterate st_step while unique.  Returns (status, final, steps, trace)."""
    trace = [] if want_trace else None
    cdef list llhs = list(lhs)
    cdef list lrhs = list(rhs)
    cdef Py_ssize_t ref_len = len(w)
    cdef dict memo = {}
    cdef set seen = {w}
    cdef Py_ssize_t steps = 0
    cdef long long work = 0
    cdef long long wl = work_limit
    cdef Py_ssize_t bud = budget
    while True:
        kind, y, p, i, count = st_step(llhs, lrhs, w, mode, depth, max_branch,
                                       ref_len, memo)
        if kind == STEP_STUCK:
            return (CLOSE_TERMINAL, w, steps, trace)
        if kind == STEP_AMBIGUOUS:
            return (CLOSE_AMBIGUOUS, w, steps, trace)
        if kind == STEP_OVERFLOW:
            return (CLOSE_OVERFLOW, w, steps, trace)
        if steps >= bud:
            return (CLOSE_BUDGET, w, steps, trace)
        steps += 1
        w = y
        if want_trace:
            trace.append((i, p, len(w)))
        if w in seen:
            return (CLOSE_BUDGET, w, steps, trace)
        seen.add(w)
        work += len(w)
        if wl and work > wl:
            return (CLOSE_BUDGET, w, steps, trace)


# --- Post correspondence --------------------------------------------------

def pcp_applications(us, vs, x):
    """All (pair index, yielded string), one per applicable pair."""
    cdef list out = []
    cdef Py_ssize_t i
    cdef str u, v, xv, xs = x
    for i in range(len(us)):
        u = us[i]
        v = vs[i]
        if len(xs) + len(v) >= len(u):
            xv = xs + v
            if xv.startswith(u):
                out.append((i, xv[len(u):]))
    return out


cdef tuple _pcp_successors(list us, list vs, str x):
    cdef list apps = pcp_applications(us, vs, x)
    cdef set seen = set()
    cdef list out = []
    cdef Py_ssize_t i
    cdef str y
    for i, y in apps:
        if y not in seen:
            seen.add(y)
            out.append((y, i))
    return out, len(apps)


cdef Py_ssize_t _pcp_depth(list us, list vs, str x, Py_ssize_t cap,
                           list budget) except? -1:
    if cap == 0:
        return 0
    succ, _ = _pcp_successors(us, vs, x)
    if len(succ) > <Py_ssize_t>budget[1]:
        raise _Overflow
    budget[0] = budget[0] - len(succ)
    if budget[0] < 0:
        raise _Overflow
    cdef Py_ssize_t best = 0, d
    cdef str y
    for y, _ in succ:
        d = 1 + _pcp_depth(us, vs, y, cap - 1, budget)
        if d > best:
            best = d
            if best >= cap:
                return best
    return best


def pcp_step(us, vs, x, mode, depth, max_branch, succ_cap=0):
    """One deterministic yield step.  succ_cap bounds applicable pairs."""
    cdef list lus = list(us)
    cdef list lvs = list(vs)
    succ, napps = _pcp_successors(lus, lvs, x)
    cdef Py_ssize_t k, d, best, winner, cap
    cdef bint tie
    cdef str y
    if mode == 0:
        if napps == 0:
            return (STEP_STUCK, x, -1, -1, 0)
        if napps == 1:
            y, i = succ[0]
            return (STEP_UNIQUE, y, -1, i, 1)
        return (STEP_AMBIGUOUS, x, -1, -1, napps)
    if not succ:
        return (STEP_STUCK, x, -1, -1, 0)
    if succ_cap and napps > succ_cap:
        return (STEP_AMBIGUOUS, x, -1, -1, napps)
    if len(succ) == 1:
        y, i = succ[0]
        return (STEP_UNIQUE, y, -1, i, 1)
    if len(succ) > max_branch:
        return (STEP_OVERFLOW, x, -1, -1, len(succ))
    cap = depth + 1
    budget = [max_branch * cap, max_branch]
    best = -1
    winner = -1
    tie = False
    try:
        for k in range(len(succ)):
            y = succ[k][0]
            d = _pcp_depth(lus, lvs, y, cap, budget)
            if d > best:
                best = d
                winner = k
                tie = False
            elif d == best:
                tie = True
    except _Overflow:
        return (STEP_OVERFLOW, x, -1, -1, len(succ))
    if tie or winner < 0:
        return (STEP_AMBIGUOUS, x, -1, -1, len(succ))
    y, i = succ[winner]
    return (STEP_UNIQUE, y, -1, i, 1)


def pcp_closure(us, vs, x, budget, mode, depth, max_branch, succ_cap=0,
                want_trace=False, work_limit=0):
    trace = [] if want_trace else None
    cdef list lus = list(us)
    cdef list lvs = list(vs)
    cdef set seen = {x}
    cdef Py_ssize_t steps = 0
    cdef long long work = 0
    cdef long long wl = work_limit
    cdef Py_ssize_t bud = budget
    while True:
        kind, y, _, i, count = pcp_step(lus, lvs, x, mode, depth, max_branch,
                                        succ_cap)
        if kind == STEP_STUCK:
            return (CLOSE_TERMINAL, x, steps, trace)
        if kind == STEP_AMBIGUOUS:
            return (CLOSE_AMBIGUOUS, x, steps, trace)
        if kind == STEP_OVERFLOW:
            return (CLOSE_OVERFLOW, x, steps, trace)
        if steps >= bud:
            return (CLOSE_BUDGET, x, steps, trace)
        steps += 1
        x = y
        if want_trace:
            trace.append((i, -1, len(x)))
        if x in seen:
            return (CLOSE_BUDGET, x, steps, trace)
        seen.add(x)
        work += len(x)
        if wl and work > wl:
            return (CLOSE_BUDGET, x, steps, trace)
