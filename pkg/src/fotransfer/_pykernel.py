"""Pure-Python formula machine; the same algorithm as ``_ckernel.pyx``.

A compiled formula is a flat array of nodes.  Quantifier nodes whose free
variables span a small enough space memoize their truth value, keyed by the
values of those free variables, for the lifetime of the machine.
"""

# node opcodes, shared with the Cython kernel
TRUE, FALSE, ATOM, EQ, NOT, AND, OR, IMPLIES, EXISTS, FORALL = range(10)


class Machine:
    def __init__(self, op, a, b, c, args, fv_off, fv_n, fvslots, memo_off,
                 memo_size, tables, rel_off, n, nslots):
        self.op = list(map(int, op))
        self.a = list(map(int, a))
        self.b = list(map(int, b))
        self.c = list(map(int, c))
        self.args = list(map(int, args))
        self.fv_off = list(map(int, fv_off))
        self.fv_n = list(map(int, fv_n))
        self.fvslots = list(map(int, fvslots))
        self.memo_off = list(map(int, memo_off))
        self.memo = bytearray(b"\xff") * int(memo_size)
        self.tables = bytes(tables)
        self.rel_off = list(map(int, rel_off))
        self.n = int(n)
        self.asg = [0] * max(int(nslots), 1)

    def set_slot(self, slot, value):
        self.asg[slot] = value

    def run(self, root):
        return self._ev(root)

    def _ev(self, i):
        o = self.op[i]
        asg = self.asg
        if o == ATOM:
            n = self.n
            idx = 0
            off = self.b[i]
            for j in range(self.c[i]):
                idx = idx * n + asg[self.args[off + j]]
            return self.tables[self.rel_off[self.a[i]] + idx]
        if o == AND:
            return self._ev(self.a[i]) and self._ev(self.b[i])
        if o == OR:
            return self._ev(self.a[i]) or self._ev(self.b[i])
        if o == NOT:
            return 1 - self._ev(self.a[i])
        if o == IMPLIES:
            return 1 if not self._ev(self.a[i]) else self._ev(self.b[i])
        if o == EQ:
            return 1 if asg[self.a[i]] == asg[self.b[i]] else 0
        if o == TRUE:
            return 1
        if o == FALSE:
            return 0
        # quantifier
        mo = self.memo_off[i]
        key = 0
        if mo >= 0:
            mult = 1
            fo = self.fv_off[i]
            for j in range(self.fv_n[i]):
                key += asg[self.fvslots[fo + j]] * mult
                mult *= self.n
            cached = self.memo[mo + key]
            if cached != 255:
                return cached
        slot = self.b[i]
        body = self.a[i]
        old = asg[slot]
        res = 1 if o == FORALL else 0
        for v in range(self.n):
            asg[slot] = v
            if self._ev(body) != res:
                res = 1 - res
                break
        asg[slot] = old
        if mo >= 0:
            self.memo[mo + key] = res
        return res
