# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled solver kernel.

Mirror of ``_kernel_py``; see that module for the data layout.  The
variable count is capped at 60 so solutions fit in stack arrays and
but-for results fit in one integer bitmask.
"""

DEF STACK_VARS = 64
DEF STACK_PROG = 256


cdef class Kernel:
    cdef int n
    cdef int[::1] par_off
    cdef int[::1] parents
    cdef int[::1] strides
    cdef int[::1] tbl_off
    cdef int[::1] tbl
    cdef int[::1] sizes

    def __init__(self, int n, par_off, parents, strides, tbl_off, tbl, sizes):
        if n > 60:
            raise ValueError("kernel supports at most 60 variables")
        self.n = n
        self.par_off = par_off
        self.parents = parents
        self.strides = strides
        self.tbl_off = tbl_off
        self.tbl = tbl
        self.sizes = sizes

    cdef void _solve(self, int* interv, int* out):
        cdef int i, j, idx, c
        for i in range(self.n):
            c = interv[i]
            if c < 0:
                idx = self.tbl_off[i]
                for j in range(self.par_off[i], self.par_off[i + 1]):
                    idx += out[self.parents[j]] * self.strides[j]
                c = self.tbl[idx]
            out[i] = c

    cdef bint _eval(self, int[::1] prog, int* values):
        cdef int sp = 0
        cdef int t, op
        cdef bint stack[STACK_PROG]
        for t in range(0, prog.shape[0], 3):
            op = prog[t]
            if op == 0:
                stack[sp] = values[prog[t + 1]] == prog[t + 2]
                sp += 1
            elif op == 1:
                stack[sp - 1] = not stack[sp - 1]
            elif op == 2:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] and stack[sp]
            else:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] or stack[sp]
        return stack[sp - 1]

    def solve_into(self, int[::1] interv, int[::1] out):
        """Write the solution codes under ``interv`` into ``out``."""
        cdef int iv[STACK_VARS]
        cdef int buf[STACK_VARS]
        cdef int i
        for i in range(self.n):
            iv[i] = interv[i]
        self._solve(iv, buf)
        for i in range(self.n):
            out[i] = buf[i]

    def holds(self, int[::1] interv, int[::1] prog):
        """Truth of the program in the solution under ``interv``."""
        cdef int iv[STACK_VARS]
        cdef int buf[STACK_VARS]
        cdef int i
        for i in range(self.n):
            iv[i] = interv[i]
        self._solve(iv, buf)
        return bool(self._eval(prog, buf))

    def butfor_flips(self, int[::1] interv, int[::1] prog, int[::1] flips):
        """But-for scan: which single-variable pins falsify the program.

        Returns -1 when the program fails under ``interv``; otherwise a
        bitmask of positions with a falsifying alternative, the first
        such code (range order) written into ``flips``.
        """
        cdef int iv[STACK_VARS]
        cdef int base[STACK_VARS]
        cdef int scratch[STACK_VARS]
        cdef int i, a, cur, found
        cdef long long mask = 0
        for i in range(self.n):
            iv[i] = interv[i]
            flips[i] = -1
        self._solve(iv, base)
        if not self._eval(prog, base):
            return -1
        for i in range(self.n):
            cur = base[i]
            found = -1
            for a in range(self.sizes[i]):
                if a == cur:
                    continue
                iv[i] = a
                self._solve(iv, scratch)
                if not self._eval(prog, scratch):
                    found = a
                    break
            iv[i] = interv[i]
            if found >= 0:
                mask |= (<long long>1) << i
                flips[i] = found
        return mask
