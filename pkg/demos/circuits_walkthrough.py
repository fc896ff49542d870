"""
Comparator circuits by hand
===========================

Build a small comparator circuit, watch values move layer by layer, and check
that every layer carries the same number of ones.
"""

from comparator_circuits import CcvInstance, Circuit, Comparator, evaluate, ones_per_layer

# six wires, four gates; each gate sends the min to its first wire
c = Circuit(6, (Comparator(0, 3), Comparator(1, 4), Comparator(0, 5), Comparator(3, 1)))
inst = CcvInstance(c, (1, 1, 1, 0, 0, 0), designated_wire=1)

trace = evaluate(inst)
print(trace.format())
print("wire 1 outputs", int(trace.outputs[1]))

# a comparator only permutes its two values, so the count of ones never changes
print("ones per layer:", ones_per_layer(trace))

# the rows are a plain numpy array; column sums show each wire's activity
print("times each wire held a one:", trace.rows.sum(axis=0))
