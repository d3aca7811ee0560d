"""Compilation of validated models to integer lookup tables.

Exact rational arithmetic happens exactly once per root model, while
building the tables (the same exhaustive evaluation that proved
totality).  After that, solving under any intervention is pure integer
work in the kernel: values become codes (indices into each variable's
range tuple), variables become positions in the dependency order, and
exogenous variables are folded away at the model's context.

Models produced by ``intervene`` share their root's engine; the chain
of interventions collapses to one intervention vector.
"""

from __future__ import annotations

import itertools
from array import array

from .backends import Kernel
from .errors import ResourceLimitError
from .expressions import Lit, evaluate_expr, expr_variables
from .formulas import And, Atom, Not, Or

MAX_KERNEL_VARS = 60
MAX_PROG_DEPTH = 250

ATOM_OP = 0
NOT_OP = 1
AND_OP = 2
OR_OP = 3


class Engine:
    """Compiled form of one validated root model."""

    def __init__(self, model):
        model.ensure_valid()
        order = model.dependency_order()
        if len(order) > MAX_KERNEL_VARS:
            raise ResourceLimitError(
                f"model {model.name!r} has {len(order)} endogenous "
                f"variables; the kernel supports at most {MAX_KERNEL_VARS}"
            )
        sig = model.signature
        self.model = model
        self.order = order
        self.pos = {n: i for i, n in enumerate(order)}
        self.n = len(order)
        endo_ranges = sig.endogenous_ranges
        self.ranges = [endo_ranges[n] for n in order]
        self.sizes = array("i", [len(r) for r in self.ranges])
        self.decl_names = sig.endogenous_names

        bodies = {f.target: f.body for f in model.functions}
        ctx = dict(model.context)
        par_off = [0]
        parents = []
        strides = []
        tbl_off = [0]
        tbl = []
        # -2 marks a non-constant body; pinning a constant-bodied
        # variable at its own constant changes nothing, so canonical
        # keys erase such pins.
        self.base_const = array("i", [-2] * self.n)
        for i, name in enumerate(order):
            body = bodies[name]
            if isinstance(body, Lit):
                self.base_const[i] = self.ranges[i].index(body.value)
            deps = sorted(
                (d for d in expr_variables(body) if d in self.pos),
                key=self.pos.__getitem__,
            )
            dep_sizes = [len(endo_ranges[d]) for d in deps]
            dep_strides = [0] * len(deps)
            acc = 1
            for j in reversed(range(len(deps))):
                dep_strides[j] = acc
                acc *= dep_sizes[j]
            parents.extend(self.pos[d] for d in deps)
            strides.extend(dep_strides)
            par_off.append(len(parents))
            # product varies the last dependency fastest, matching the
            # stride layout above
            for combo in itertools.product(*(endo_ranges[d] for d in deps)):
                env = dict(ctx)
                env.update(zip(deps, combo))
                tbl.append(self.ranges[i].index(evaluate_expr(body, env)))
            tbl_off.append(len(tbl))

        self.kernel_args = (
            self.n,
            array("i", par_off),
            array("i", parents),
            array("i", strides),
            array("i", tbl_off),
            array("i", tbl),
            self.sizes,
        )
        self.kernel = Kernel(*self.kernel_args)
        self.free = array("i", [-1] * self.n)
        self.actual = self.solve_codes(self.free)

    # -- vectors and codes --------------------------------------------

    def interv_vector(self, assignment) -> array:
        """Intervention vector for a name -> value mapping."""
        vec = array("i", self.free)
        for name, value in assignment.items():
            vec[self.pos[name]] = self.ranges[self.pos[name]].index(value)
        return vec

    def extend(self, vec, pins) -> array:
        """Copy of ``vec`` with extra (position, code) pins applied."""
        out = array("i", vec)
        for p, c in pins:
            out[p] = c
        return out

    def solve_codes(self, vec) -> array:
        out = array("i", [0] * self.n)
        self.kernel.solve_into(vec, out)
        return out

    def decode(self, codes) -> dict:
        """Codes back to a name -> Fraction solution, declaration order."""
        return {
            n: self.ranges[self.pos[n]][codes[self.pos[n]]]
            for n in self.decl_names
        }

    def canonical_key(self, vec) -> bytes:
        """Identity of the intervened model the vector produces.

        Pinning a variable whose structural function is already that
        constant yields the very same model, so such pins normalise
        away.
        """
        norm = array("i", vec)
        for i in range(self.n):
            if norm[i] == self.base_const[i]:
                norm[i] = -1
        return norm.tobytes()

    # -- formulas -----------------------------------------------------

    def compile_matrix(self, matrix) -> array:
        """Flatten a checked matrix to a postfix integer program."""
        prog = []
        depth = self._flatten(matrix, prog, 0)
        if depth > MAX_PROG_DEPTH:
            raise ResourceLimitError("formula nests too deeply to compile")
        return array("i", prog)

    def _flatten(self, matrix, prog, depth):
        if isinstance(matrix, Atom):
            p = self.pos[matrix.var]
            prog.extend((ATOM_OP, p, self.ranges[p].index(matrix.value)))
            return depth + 1
        if isinstance(matrix, Not):
            d = self._flatten(matrix.operand, prog, depth)
            prog.extend((NOT_OP, 0, 0))
            return d
        op = AND_OP if isinstance(matrix, And) else OR_OP
        left = self._flatten(matrix.left, prog, depth)
        right = self._flatten(matrix.right, prog, depth + 1)
        prog.extend((op, 0, 0))
        return max(left, right)

    def holds(self, vec, prog) -> bool:
        return bool(self.kernel.holds(vec, prog))

    def butfor_flips(self, vec, prog):
        """(mask, flips) from the kernel; mask -1 when the program fails."""
        flips = array("i", self.free)
        mask = self.kernel.butfor_flips(vec, prog, flips)
        return mask, flips


def engine_for(model):
    """The root engine for ``model`` plus its base intervention vector."""
    root, base = model._lineage()
    engine = root._cache.get("engine")
    if engine is None:
        engine = Engine(root)
        root._cache["engine"] = engine
    return engine, engine.interv_vector(base)
