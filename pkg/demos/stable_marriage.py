"""
Stable marriage as a circuit fixed point
========================================

Iterate the three-valued marriage block from its starting state, read off the
man-optimal and woman-optimal marriages, and compare with deferred acceptance.
"""

from comparator_circuits import SmInstance
from comparator_circuits.marriage import (
    lfmm_to_sm, marriage_iterates, mosm_to_ccvneg, slot_labels, solve, star_budget,
)
from comparator_circuits.oracles import gale_shapley, random_bipartite, random_sm
from comparator_circuits.reductions import answer
from comparator_circuits.graphs import lfm_matching


def show(state):
    return " ".join("*" if int(v) == 2 else str(int(v)) for v in state)

# men 0,1 and women 0,1 with opposing tastes: two stable marriages exist
sm = SmInstance(2, ((0, 1), (1, 0)), ((1, 0), (0, 1)))
print(" ".join(slot_labels(sm)))
for i, state in enumerate(marriage_iterates(sm)):
    print(f"I{i}: {show(state)}")
print("budget was", star_budget(sm.n), "steps")

# stars that survive are resolved toward one side or the other
print("man-optimal:  ", sorted(solve(sm, "man")))
print("woman-optimal:", sorted(solve(sm, "woman")))

# larger random instance, checked against the textbook algorithm
big = random_sm(11, 6)
print("n=6 agrees with deferred acceptance:",
      solve(big, "man") == gale_shapley(big, "men"),
      solve(big, "woman") == gale_shapley(big, "women"))

# the membership question as a single circuit with negations
print("is (0,0) man-optimal?", answer(mosm_to_ccvneg(sm, 0, 0)))

# greedy matching embedded into a marriage instance
g = random_bipartite(3, 4, 4, degree_bound=3, density=0.5)
red = lfmm_to_sm(g)
print("greedy matching:", sorted(lfm_matching(g)))
print("from marriage:  ", sorted(red.restrict(solve(red.sm))))
