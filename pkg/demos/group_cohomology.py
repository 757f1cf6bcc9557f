"""Group-theoretic checks behind the 2+S4 construction.

Runs every check over F2 and prints the outcome.  The pullback of the
extension class along the three projections of S3 x| (Z/2)^4 onto S4 does
not add up to a coboundary; the element v = (1,0,0,1) shows why: all three
projections send it to a double transposition, so in the pulled-back
extension both lifts of v have order 4, which a split class cannot allow.
"""

from s4lift import octahedral

for name, ok, detail in octahedral.group_checks():
    print(f"{'ok ' if ok else 'NO '} {name}: {detail}")
