"""Weight 3/2 eigenforms attached to 43A and 172A.

The span is the theta series of the ternary forms of levels 172 and 344
together with the real and imaginary parts of f * Theta_43, f the weight-1
form of level 344.  Intersecting the a_p(E)-eigenspaces of T_9, T_25, T_49
leaves one line for each curve; the result is then checked against T_{p^2}
for every good p up to 19.
"""

from s4lift import reproduce

report = reproduce.run_case(43)
print("basis:", ", ".join(report.labels))
for e in report.eigenforms:
    print()
    print(f"{e.name} (curve {e.curve})")
    terms = [f"{c} {lab}" for lab, c in zip(e.labels, e.combination) if c]
    print("  = " + "\n    + ".join(terms))
    print("  q-expansion:", e.expansion.format(50))
    print("  T_p^2 eigen at", sorted(e.hecke), "->", e.hecke_ok, "; matches stored vector:", e.matches_golden)
print("timings (s):", report.timings)
