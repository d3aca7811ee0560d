"""Pure-Python solver kernel.

Mirror of the compiled extension in ``_kernel.pyx``; the two must stay
behaviourally identical.  Values are codes (indices into each
variable's range), variables are positions in one fixed dependency
order, and structural functions are flat lookup tables, so solving is
integer work only.

An intervention vector has one entry per position: a code pins the
variable, -1 leaves it governed by its table.  Formula programs are
flat postfix triples ``(op, a, b)`` with op 0 = atom (a = position,
b = code), 1 = not, 2 = and, 3 = or.
"""

from __future__ import annotations

MAX_VARS = 60


class Kernel:
    def __init__(self, n, par_off, parents, strides, tbl_off, tbl, sizes):
        if n > MAX_VARS:
            raise ValueError(f"kernel supports at most {MAX_VARS} variables")
        self.n = n
        self.par_off = list(par_off)
        self.parents = list(parents)
        self.strides = list(strides)
        self.tbl_off = list(tbl_off)
        self.tbl = list(tbl)
        self.sizes = list(sizes)

    def _solve(self, interv, out):
        par_off = self.par_off
        parents = self.parents
        strides = self.strides
        tbl = self.tbl
        tbl_off = self.tbl_off
        for i in range(self.n):
            c = interv[i]
            if c < 0:
                idx = tbl_off[i]
                for j in range(par_off[i], par_off[i + 1]):
                    idx += out[parents[j]] * strides[j]
                c = tbl[idx]
            out[i] = c

    def _eval(self, prog, values):
        stack = []
        push = stack.append
        for t in range(0, len(prog), 3):
            op = prog[t]
            if op == 0:
                push(values[prog[t + 1]] == prog[t + 2])
            elif op == 1:
                stack[-1] = not stack[-1]
            elif op == 2:
                b = stack.pop()
                stack[-1] = stack[-1] and b
            else:
                b = stack.pop()
                stack[-1] = stack[-1] or b
        return stack[-1]

    def solve_into(self, interv, out):
        """Write the solution codes under ``interv`` into ``out``."""
        buf = [0] * self.n
        self._solve(interv, buf)
        for i in range(self.n):
            out[i] = buf[i]

    def holds(self, interv, prog):
        """Truth of the program in the solution under ``interv``."""
        buf = [0] * self.n
        self._solve(interv, buf)
        return bool(self._eval(prog, buf))

    def butfor_flips(self, interv, prog, flips):
        """But-for scan: which single-variable pins falsify the program.

        Solves under ``interv``; if the program does not hold there,
        returns -1.  Otherwise returns a bitmask of positions for which
        some alternative code falsifies the program, writing the first
        such code (range order) into ``flips`` and -1 elsewhere.
        """
        iv = list(interv)
        base = [0] * self.n
        scratch = [0] * self.n
        self._solve(iv, base)
        for i in range(self.n):
            flips[i] = -1
        if not self._eval(prog, base):
            return -1
        mask = 0
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
                mask |= 1 << i
                flips[i] = found
        return mask
