"""Finite structural causal models with exact rational values.

A model pairs a signature (exogenous and endogenous variables, each
with a finite range of rationals) with one total structural function
per endogenous variable and a context fixing every exogenous variable.
Validation proves the dependency graph acyclic and every function
total by exhaustive evaluation, after which the model has a unique
solution computable in dependency order.

Interventions replace structural functions with constants and compose
sequentially, later settings overwriting earlier ones for the same
variable.  Intervening on a validated model yields a model that is
valid by construction, and the result remembers the unintervened root
it came from so solvers can reuse work across a whole family of
interventions.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .diagnostics import ERROR, WARNING, Diagnostic, errors_in
from .errors import (
    InterventionError,
    InvalidModelError,
    OutOfRangeError,
    UnknownVariableError,
)
from .expressions import Expr, Lit, evaluate_expr, expr_variables
from .formulas import Formula, Matrix, check_matrix, evaluate_matrix
from .rationals import as_value, format_rational


def _normalize_ranges(entries):
    return tuple(
        (name, tuple(as_value(v) for v in values)) for name, values in entries
    )


@dataclass(frozen=True)
class Signature:
    """Variable declarations: ``(name, (value, ...))`` pairs, in order.

    Declaration order is load-bearing: subset enumerations, witness
    searches and reports all follow it, so two signatures that differ
    only in ordering are different signatures.
    """

    exogenous: tuple
    endogenous: tuple

    def __post_init__(self):
        object.__setattr__(self, "exogenous", _normalize_ranges(self.exogenous))
        object.__setattr__(self, "endogenous", _normalize_ranges(self.endogenous))

    @property
    def exogenous_names(self) -> tuple:
        return tuple(name for name, _ in self.exogenous)

    @property
    def endogenous_names(self) -> tuple:
        return tuple(name for name, _ in self.endogenous)

    @property
    def exogenous_ranges(self) -> dict:
        return dict(self.exogenous)

    @property
    def endogenous_ranges(self) -> dict:
        return dict(self.endogenous)

    @property
    def ranges(self) -> dict:
        return {**dict(self.exogenous), **dict(self.endogenous)}

    def index_of(self, name: str) -> int:
        """Position in the combined exogenous-then-endogenous order."""
        for i, (n, _) in enumerate(self.exogenous + self.endogenous):
            if n == name:
                return i
        raise UnknownVariableError(f"unknown variable {name}")


@dataclass(frozen=True)
class StructuralFunction:
    target: str
    body: Expr


@dataclass(frozen=True)
class Provenance:
    """How a member of a counterfactual space was produced.

    ``changed`` lists the variables set to possibly new values together
    with those values; ``fixed`` lists the variables frozen at their
    actual values.  The unmodified model has both empty.
    """

    changed: tuple = ()
    fixed: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "changed", tuple((n, as_value(v)) for n, v in self.changed)
        )
        object.__setattr__(self, "fixed", tuple(self.fixed))

    @property
    def is_base(self) -> bool:
        return not self.changed and not self.fixed

    def describe(self) -> str:
        if self.is_base:
            return "the unmodified model"
        parts = [f"{n} := {format_rational(v)}" for n, v in self.changed]
        parts += [f"{n} fixed" for n in self.fixed]
        return "[" + ", ".join(parts) + "]"


def _as_pairs(assignment):
    if hasattr(assignment, "items"):
        return list(assignment.items())
    return [(n, v) for n, v in assignment]


@dataclass(frozen=True)
class CausalModel:
    name: str
    signature: Signature
    functions: tuple
    context: tuple
    frozen: frozenset = frozenset()
    _cache: dict = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    def __post_init__(self):
        endo_index = {n: i for i, n in enumerate(self.signature.endogenous_names)}
        functions = tuple(
            sorted(
                self.functions,
                key=lambda f: (endo_index.get(f.target, len(endo_index)), f.target),
            )
        )
        object.__setattr__(self, "functions", functions)
        exo_index = {n: i for i, n in enumerate(self.signature.exogenous_names)}
        context = tuple(
            sorted(
                ((n, as_value(v)) for n, v in _as_pairs(self.context)),
                key=lambda item: (exo_index.get(item[0], len(exo_index)), item[0]),
            )
        )
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "frozen", frozenset(self.frozen))

    # -- validation ---------------------------------------------------

    def validate(self) -> tuple:
        """Return all diagnostics, caching the result."""
        cached = self._cache.get("diagnostics")
        if cached is not None:
            return cached
        diags = []
        self._check_declarations(diags)
        self._check_functions(diags)
        self._check_context(diags)
        if not errors_in(diags):
            order, cycle = self._dependency_order()
            if cycle is not None:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "cycle",
                        "cyclic dependency: " + " -> ".join(cycle),
                        variable=cycle[0],
                    )
                )
            else:
                self._cache["topo"] = order
                self._check_totality(diags)
        result = tuple(diags)
        self._cache["diagnostics"] = result
        return result

    def _check_declarations(self, diags):
        seen = set()
        for name, _ in self.signature.exogenous + self.signature.endogenous:
            if name in seen:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "duplicate",
                        f"variable {name} declared more than once",
                        variable=name,
                    )
                )
            seen.add(name)
        for name, values in self.signature.exogenous + self.signature.endogenous:
            if not values:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "range",
                        f"variable {name} has an empty range",
                        variable=name,
                    )
                )
            elif len(set(values)) != len(values):
                diags.append(
                    Diagnostic(
                        ERROR,
                        "range",
                        f"range of {name} lists a value twice",
                        variable=name,
                    )
                )
        for name in sorted(self.frozen):
            if name not in self.signature.endogenous_names:
                diags.append(
                    Diagnostic(
                        WARNING,
                        "undeclared",
                        f"frozen marker on unknown variable {name}",
                        variable=name,
                    )
                )

    def _check_functions(self, diags):
        endo = set(self.signature.endogenous_names)
        exo = set(self.signature.exogenous_names)
        targets = [f.target for f in self.functions]
        reported = set()
        for f in self.functions:
            if f.target in exo:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "bad-target",
                        f"structural function targets exogenous variable "
                        f"{f.target}",
                        variable=f.target,
                    )
                )
            elif f.target not in endo:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "bad-target",
                        f"structural function targets undeclared variable "
                        f"{f.target}",
                        variable=f.target,
                    )
                )
            elif targets.count(f.target) > 1 and f.target not in reported:
                reported.add(f.target)
                diags.append(
                    Diagnostic(
                        ERROR,
                        "duplicate",
                        f"variable {f.target} has more than one structural "
                        f"function",
                        variable=f.target,
                    )
                )
        for name in self.signature.endogenous_names:
            if name not in targets:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "missing-function",
                        f"endogenous variable {name} has no structural function",
                        variable=name,
                    )
                )
        declared = endo | exo
        for f in self.functions:
            for ref in sorted(expr_variables(f.body)):
                if ref not in declared:
                    diags.append(
                        Diagnostic(
                            ERROR,
                            "undeclared",
                            f"function for {f.target} references undeclared "
                            f"variable {ref}",
                            variable=f.target,
                        )
                    )

    def _check_context(self, diags):
        exo_ranges = self.signature.exogenous_ranges
        seen = set()
        for name, value in self.context:
            if name not in exo_ranges:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "context",
                        f"context sets unknown exogenous variable {name}",
                        variable=name,
                    )
                )
                continue
            if name in seen:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "duplicate",
                        f"context sets {name} twice",
                        variable=name,
                    )
                )
                continue
            seen.add(name)
            if value not in exo_ranges[name]:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "context",
                        f"context value {format_rational(value)} is outside "
                        f"the range of {name}",
                        variable=name,
                    )
                )
        for name in self.signature.exogenous_names:
            if name not in seen:
                diags.append(
                    Diagnostic(
                        ERROR,
                        "context",
                        f"context leaves exogenous variable {name} unset",
                        variable=name,
                    )
                )

    def _dependency_order(self):
        """Kahn's algorithm, ties broken by declaration order.

        Returns (topological order of endogenous names, None) or
        (None, one cycle as a name path).
        """
        endo = self.signature.endogenous_names
        index = {n: i for i, n in enumerate(endo)}
        parents = {}
        children = {n: [] for n in endo}
        indegree = {n: 0 for n in endo}
        for f in self.functions:
            deps = sorted(
                expr_variables(f.body) & set(endo), key=index.__getitem__
            )
            parents[f.target] = deps
            indegree[f.target] = len(deps)
            for d in deps:
                children[d].append(f.target)
        ready = [index[n] for n in endo if indegree[n] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            name = endo[heapq.heappop(ready)]
            order.append(name)
            for child in children[name]:
                indegree[child] -= 1
                if indegree[child] == 0:
                    heapq.heappush(ready, index[child])
        if len(order) == len(endo):
            return tuple(order), None
        stuck = [n for n in endo if n not in set(order)]
        return None, _find_cycle(stuck, parents)

    def _check_totality(self, diags):
        """Evaluate every function over the whole product of its parent
        ranges; any out-of-range output is a counterexample."""
        ranges = self.signature.ranges
        endo_ranges = self.signature.endogenous_ranges
        for f in self.functions:
            parent_names = sorted(
                expr_variables(f.body), key=self.signature.index_of
            )
            target_range = set(endo_ranges[f.target])
            spaces = [ranges[p] for p in parent_names]
            for combo in itertools.product(*spaces):
                env = dict(zip(parent_names, combo))
                result = evaluate_expr(f.body, env)
                if result not in target_range:
                    diags.append(
                        Diagnostic(
                            ERROR,
                            "totality",
                            f"function for {f.target} is partial: it yields "
                            f"{format_rational(result)} when "
                            + ", ".join(
                                f"{p} = {format_rational(v)}"
                                for p, v in env.items()
                            ),
                            variable=f.target,
                            witness={"assignment": env, "result": result},
                        )
                    )
                    break

    @property
    def is_valid(self) -> bool:
        return not errors_in(self.validate())

    def ensure_valid(self) -> None:
        problems = errors_in(self.validate())
        if problems:
            raise InvalidModelError(
                f"model {self.name!r} is invalid: {problems[0].message}",
                self.validate(),
            )

    # -- solving ------------------------------------------------------

    def dependency_order(self) -> tuple:
        self.ensure_valid()
        return self._cache["topo"]

    def solve(self) -> dict:
        """The unique solution: endogenous name -> value, declaration order."""
        cached = self._cache.get("solution")
        if cached is not None:
            return dict(cached)
        self.ensure_valid()
        env = dict(self.context)
        bodies = {f.target: f.body for f in self.functions}
        for name in self._cache["topo"]:
            env[name] = evaluate_expr(bodies[name], env)
        solution = {n: env[n] for n in self.signature.endogenous_names}
        self._cache["solution"] = solution
        return dict(solution)

    def evaluate(self, formula) -> bool:
        """Truth of a formula in this model (prefix applied first)."""
        if isinstance(formula, Matrix):
            formula = Formula(formula)
        model = self
        if formula.intervention:
            model = self.intervene(formula.intervention)
        check_matrix(formula.matrix, self.signature)
        return evaluate_matrix(formula.matrix, model.solve())

    # -- interventions ------------------------------------------------

    def _lineage(self):
        return self._cache.get("lineage", (self, {}))

    def intervene(self, assignment, name: str | None = None) -> "CausalModel":
        """The model with each assigned variable pinned to a constant.

        Later interventions overwrite earlier ones for the same
        variable.  The result is valid by construction and shares its
        root's compiled solver.
        """
        self.ensure_valid()
        pairs = [(n, as_value(v)) for n, v in _as_pairs(assignment)]
        endo_ranges = self.signature.endogenous_ranges
        for n, v in pairs:
            if n in self.signature.exogenous_names:
                raise InterventionError(
                    f"cannot intervene on exogenous variable {n}"
                )
            if n not in endo_ranges:
                raise UnknownVariableError(
                    f"cannot intervene on unknown variable {n}"
                )
            if v not in endo_ranges[n]:
                raise OutOfRangeError(
                    f"intervention value {format_rational(v)} is not in the "
                    f"range of {n}"
                )
        root, base = self._lineage()
        merged = dict(base)
        merged.update(pairs)
        if not merged:
            return self
        functions = tuple(
            StructuralFunction(f.target, Lit(merged[f.target]))
            if f.target in merged
            else f
            for f in root.functions
        )
        if name is None:
            shown = [
                f"{n} := {format_rational(merged[n])}"
                for n in self.signature.endogenous_names
                if n in merged
            ]
            name = f"{root.name}[{', '.join(shown)}]"
        child = CausalModel(
            name, self.signature, functions, self.context, self.frozen
        )
        child._cache["diagnostics"] = ()
        child._cache["topo"] = root._cache["topo"]
        child._cache["lineage"] = (root, merged)
        return child

    # -- counterfactual space -----------------------------------------

    def counterfactual_space(self, variables):
        """Yield (model, provenance) pairs for the space around ``variables``.

        Members combine an intervention on any subset of ``variables``
        (all in-range values) with freezing any subset of the remaining
        endogenous variables at their actual values.  The unmodified
        model itself is the first member.  Enumeration is deterministic:
        subsets by size then declaration order, values in range order.
        """
        self.ensure_valid()
        endo = self.signature.endogenous_names
        ranges = self.signature.endogenous_ranges
        targets = []
        for n in dict.fromkeys(variables):
            if n in self.signature.exogenous_names:
                raise InterventionError(
                    f"counterfactual space over exogenous variable {n}"
                )
            if n not in ranges:
                raise UnknownVariableError(f"unknown variable {n}")
            targets.append(n)
        targets.sort(key=endo.index)
        others = [n for n in endo if n not in targets]
        actual = self.solve()
        for changed in subsets(targets):
            for values in itertools.product(*(ranges[n] for n in changed)):
                for fixed in subsets(others):
                    assignment = dict(zip(changed, values))
                    assignment.update((n, actual[n]) for n in fixed)
                    prov = Provenance(tuple(zip(changed, values)), fixed)
                    if prov.is_base:
                        yield self, prov
                    else:
                        yield self.intervene(assignment), prov

    def __str__(self) -> str:
        from .printer import format_model

        return format_model(self)


def subsets(items):
    """All subsets, smallest first, each in the order given."""
    items = tuple(items)
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


def _find_cycle(stuck, parents):
    """Walk parent links inside the stuck set until a node repeats."""
    stuck_set = set(stuck)
    node = stuck[0]
    seen = {}
    path = []
    while node not in seen:
        seen[node] = len(path)
        path.append(node)
        node = next(p for p in parents[node] if p in stuck_set)
    cycle = path[seen[node] :] + [node]
    return tuple(cycle)
