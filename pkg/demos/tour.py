"""
A short tour of the saa package
===============================

Build a presentation, hide it behind a random symplectic basis change,
and recover its label, witness and parameters.
Run with ``python demos/tour.py``.
"""

from saa import (
    Algebra,
    change_basis,
    classify,
    enumerate_census,
    instantiate_family,
    isomorphic,
    label,
    structure_report,
    tau_analysis,
)
from saa.gf import GF
from saa.fileformat import format_presentation
from saa.symlin import random_symplectic

F = GF(7)

# a type A algebra with parameter 2
A = Algebra(instantiate_family(F, label(F, "P36", 2)))
print(format_presentation(A.presentation, "P10_3_6(2) over GF(7)"))

# the same algebra in a scrambled standard basis
B = change_basis(A, random_symplectic(F, 5, seed=1))
print(len(B.presentation.triples), "nonzero triples after scrambling")

# the invariants do not see the basis
print(structure_report(B) == structure_report(A))
print(structure_report(B))

# tau on L^5 has a split minimal polynomial
print("tau type:", tau_analysis(B).type)

# classify undoes the scrambling; 5 = 2 times a cube, so the label says 2
cf = classify(B)
print("label:", cf.label)
for i, step in enumerate(cf.trace, 1):
    print(f"  {i:2d}. {step}")
print(change_basis(B, cf.witness).presentation == instantiate_family(F, cf.label))

print(isomorphic(A, Algebra(instantiate_family(F, label(F, "P36", 5)))))
print(isomorphic(A, Algebra(instantiate_family(F, label(F, "P36", 1)))))

# class counts per family; 3 divides 6, so the one-parameter families split in three
census = enumerate_census(F)
for row in census.rows:
    print(f"{row.tag:4s} {row.count}  {' '.join(map(str, row.representatives))}")
print("total:", census.total)
