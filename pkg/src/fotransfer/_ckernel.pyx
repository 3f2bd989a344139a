# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled formula machine.  Mirrors ``_pykernel.Machine`` step for step."""

import numpy as np

cdef enum:
    TRUE = 0
    FALSE = 1
    ATOM = 2
    EQ = 3
    NOT = 4
    AND = 5
    OR = 6
    IMPLIES = 7
    EXISTS = 8
    FORALL = 9


cdef class Machine:
    cdef int[::1] op, a, b, c, args, fv_off, fv_n, fvslots, memo_off, rel_off, asg
    cdef const unsigned char[::1] tables
    cdef signed char[::1] memo
    cdef int n

    def __init__(self, op, a, b, c, args, fv_off, fv_n, fvslots, memo_off,
                 memo_size, tables, rel_off, n, nslots):
        self.op = np.ascontiguousarray(op, dtype=np.intc)
        self.a = np.ascontiguousarray(a, dtype=np.intc)
        self.b = np.ascontiguousarray(b, dtype=np.intc)
        self.c = np.ascontiguousarray(c, dtype=np.intc)
        self.args = np.ascontiguousarray(args if len(args) else [0], dtype=np.intc)
        self.fv_off = np.ascontiguousarray(fv_off, dtype=np.intc)
        self.fv_n = np.ascontiguousarray(fv_n, dtype=np.intc)
        self.fvslots = np.ascontiguousarray(fvslots if len(fvslots) else [0], dtype=np.intc)
        self.memo_off = np.ascontiguousarray(memo_off, dtype=np.intc)
        self.memo = np.full(max(int(memo_size), 1), -1, dtype=np.int8)
        self.tables = np.ascontiguousarray(tables if len(tables) else [0], dtype=np.uint8)
        self.rel_off = np.ascontiguousarray(rel_off if len(rel_off) else [0], dtype=np.intc)
        self.n = n
        self.asg = np.zeros(max(int(nslots), 1), dtype=np.intc)

    def set_slot(self, int slot, int value):
        self.asg[slot] = value

    def run(self, int root):
        return self._ev(root)

    cdef int _ev(self, int i) except -1:
        cdef int o = self.op[i]
        cdef int j, idx, off, mo, fo, slot, body, old, res, v
        cdef long key, mult
        if o == ATOM:
            idx = 0
            off = self.b[i]
            for j in range(self.c[i]):
                idx = idx * self.n + self.asg[self.args[off + j]]
            return self.tables[self.rel_off[self.a[i]] + idx]
        if o == AND:
            if not self._ev(self.a[i]):
                return 0
            return self._ev(self.b[i])
        if o == OR:
            if self._ev(self.a[i]):
                return 1
            return self._ev(self.b[i])
        if o == NOT:
            return 1 - self._ev(self.a[i])
        if o == IMPLIES:
            if not self._ev(self.a[i]):
                return 1
            return self._ev(self.b[i])
        if o == EQ:
            return 1 if self.asg[self.a[i]] == self.asg[self.b[i]] else 0
        if o == TRUE:
            return 1
        if o == FALSE:
            return 0
        mo = self.memo_off[i]
        key = 0
        if mo >= 0:
            mult = 1
            fo = self.fv_off[i]
            for j in range(self.fv_n[i]):
                key += self.asg[self.fvslots[fo + j]] * mult
                mult *= self.n
            if self.memo[mo + key] >= 0:
                return self.memo[mo + key]
        slot = self.b[i]
        body = self.a[i]
        old = self.asg[slot]
        res = 1 if o == FORALL else 0
        for v in range(self.n):
            self.asg[slot] = v
            if self._ev(body) != res:
                res = 1 - res
                break
        self.asg[slot] = old
        if mo >= 0:
            self.memo[mo + key] = res
        return res
