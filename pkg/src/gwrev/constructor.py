"""Build the unique reversible root measure for an admissible pair-mode spec,
and verify detailed balance exactly.

The balance-graph potentials pin every class weight up to one global scale
per component; with a connected graph a single normalization per label gives
the neighbor distributions and the per-label weight sums give the root-label
distribution.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from .checker import CheckReport, build_balance_graph, propagate_potentials, run_checks
from .core import (
    ChecksFailedError,
    GWSpec,
    PAIR,
    RootMeasure,
    SupportClass,
    decrement,
    total,
)

Violation = Tuple[SupportClass, SupportClass, Fraction, Fraction]


def construct_measure(spec: GWSpec, report: Optional[CheckReport] = None) -> RootMeasure:
    """Solve for the reversible measure whose descendants follow `spec`.

    Runs the full admissibility checks first (unless a passing report is
    supplied) and raises ChecksFailedError carrying the report otherwise.
    """
    if spec.mode != PAIR:
        raise ChecksFailedError("construct_measure requires a pair-mode spec")
    if report is None:
        report = run_checks(spec)
    if not report.ok():
        raise ChecksFailedError(
            f"spec fails admissibility checks: {', '.join(report.failed_names())}",
            report=report,
        )
    graph = build_balance_graph(spec)
    potentials, cycle = propagate_potentials(graph)
    if cycle is not None:  # unreachable once the report passed
        raise ChecksFailedError("balance graph is inconsistent", report=report)

    label_sum = {i: Fraction(0) for i in range(1, spec.n + 1)}
    for node in graph.nodes:
        label_sum[node.label] += potentials[node]
    grand = sum(label_sum.values())

    neighbor_dist = {
        i: {
            node.vector: potentials[node] / label_sum[i]
            for node in graph.nodes
            if node.label == i
        }
        for i in range(1, spec.n + 1)
    }
    root_dist = {i: label_sum[i] / grand for i in range(1, spec.n + 1)}
    measure = RootMeasure(
        n=spec.n,
        root_dist=root_dist,
        neighbor_dist=neighbor_dist,
        descendants=spec,
    )
    _assert_support_consistency(measure)
    return measure


def _assert_support_consistency(measure: RootMeasure) -> None:
    # Stationarity forces: every positive coordinate j of a supported class
    # (i, c) corresponds to a stored offspring probability for (j, i).
    spec = measure.descendants
    for cls in measure.support_classes():
        i, c = cls
        for j, cj in enumerate(c, start=1):
            if cj > 0 and spec.pair_prob(j, i, decrement(c, j)) == 0:
                raise AssertionError(
                    f"constructed class {cls} lacks the offspring term for parent {j}"
                )


def verify_reversibility(measure: RootMeasure) -> List[Violation]:
    """Exact detailed-balance check over every admissible pair of support
    classes.

    For classes (i, c) and (j, d) with c_j > 0 and d_i > 0 the flow identity

        w(i, c) * p(i,j)(d - i) * c_j / |c|  ==  w(j, d) * p(j,i)(c - j) * d_i / |d|

    must hold exactly, where w is the unconditional class probability and
    p(x,y) the offspring law of a label-y vertex with label-x parent (in
    plain mode the parent label is ignored).  Returns all failing pairs with
    both sides; an empty list means the measure is exactly reversible.
    """
    spec = measure.descendants
    classes = measure.support_classes()
    violations: List[Violation] = []
    for a in range(len(classes)):
        u = classes[a]
        for b in range(a + 1, len(classes)):
            v = classes[b]
            i, c = u
            j, d = v
            if c[j - 1] == 0 or d[i - 1] == 0:
                continue
            lhs = (
                measure.class_prob(u)
                * spec.offspring_prob(i, j, decrement(d, i))
                * Fraction(c[j - 1], total(c))
            )
            rhs = (
                measure.class_prob(v)
                * spec.offspring_prob(j, i, decrement(c, j))
                * Fraction(d[i - 1], total(d))
            )
            if lhs != rhs:
                violations.append((u, v, lhs, rhs))
    return violations
