"""Parametrize every reversible measure with a prescribed support.

Fixing the set of root classes leaves the per-label class weights free;
offspring laws and root-label weights are then forced.  The family over
this template is two-dimensional (four classes, two labels), and the
midpoint weights reproduce the instance of demo 01.
"""

from fractions import Fraction as F

from gwrev import (
    SupportClass,
    SupportTemplate,
    assemble_measure,
    family_dimension,
    validate_template,
    verify_reversibility,
)

template = SupportTemplate(
    n=2,
    classes=(
        SupportClass(1, (1, 1)),
        SupportClass(1, (2, 1)),
        SupportClass(2, (0, 3)),
        SupportClass(2, (1, 1)),
    ),
)

print("template valid:", validate_template(template))
print("family dimension:", family_dimension(template))


def weights(s, t):
    return {
        SupportClass(1, (1, 1)): s,
        SupportClass(1, (2, 1)): 1 - s,
        SupportClass(2, (1, 1)): t,
        SupportClass(2, (0, 3)): 1 - t,
    }


for s, t in [(F(1, 2), F(1, 2)), (F(1, 3), F(1, 2)), (F(7, 9), F(2, 11))]:
    mu = assemble_measure(template, weights(s, t))
    nu = mu.descendants
    print(f"\nweights s={s}, t={t}")
    print(f"  law(1,1): {dict(sorted(nu.offspring[(1, 1)].items()))}")
    print(f"  law(2,2): {dict(sorted(nu.offspring[(2, 2)].items()))}")
    print(f"  root: {mu.root_dist}")
    print(f"  balance violations: {len(verify_reversibility(mu))}")

# Closed forms in the free parameters, verified exactly for a sweep:
#   law(1,1)(0,1) = 3s/(4-s)        law(2,1)(2,0) = (2-2s)/(2+s)
#   law(2,2)(0,2) = (2-2t)/(2-t)    root(1)       = 3t/(2+s+3t)
print("\nclosed-form sweep")
for k in range(1, 10):
    s, t = F(k, 10), F(10 - k, 10)
    mu = assemble_measure(template, weights(s, t))
    assert mu.descendants.offspring[(1, 1)][(0, 1)] == 3 * s / (4 - s)
    assert mu.descendants.offspring[(2, 1)][(2, 0)] == (2 - 2 * s) / (2 + s)
    assert mu.descendants.offspring[(2, 2)][(0, 2)] == (2 - 2 * t) / (2 - t)
    assert mu.root_dist[1] == 3 * t / (2 + s + 3 * t)
print("  all closed forms hold exactly for s = k/10, t = 1 - k/10")
