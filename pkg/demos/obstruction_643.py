"""Halving the three rational points of 643A and reading off the obstruction.

For each point P the roots of the halving quartic are the x-coordinates of
the points Q with 2Q = P.  The trace form of that quartic is compared with
the reference form <1, 1, 2, 2D> place by place; the places where the Hasse
invariants differ make up the obstruction class in Br_2(Q).
"""

from s4lift import elliptic, quadform
from s4lift.arith import squarefree_part

E = elliptic.curve("643A")
print("643A: a-invariants", [int(a) for a in E.ainvs], " discriminant", E.discriminant)

points = [elliptic.point(1, 0), elliptic.point(2, 1), elliptic.point(-1, 3)]
S = E.add(points[0], points[1])
print(f"[1,0] + [2,1] = [{S.x},{S.y}]")

classes, quartics = [], []
for P in points:
    q = E.halving_quartic(P)
    cls = quadform.obstruction_class(q)
    quartics.append(q)
    classes.append(cls)
    verdict = "trivial" if cls.is_trivial else f"ramified at {cls.sorted_places()}"
    print(f"  P = [{P.x},{P.y}]  halving quartic {q.monic()}  obstruction {verdict}")

total = classes[0] + classes[1] + classes[2]
print("sum of the three classes:", total.sorted_places() or "empty")

D_L = squarefree_part(E.discriminant)
print("Witt-sum identity with the (2, D_L) correction holds:",
      quadform.witt_sum_check(*quartics, D_L))
