"""Build a few matched pairs, break one on purpose, and take doubles."""
from matchedpairs import (coarse, cyclic_group, double, dual, make_group_pair, make_MXY, make_semi, make_terminal,
                          symmetric_group, validate_matched_pair)
from matchedpairs.matched import MatchedPair, find_pair_isomorphism

S = symmetric_group(3)
rotations = [a for a in S.arrows if a in {(0, 1, 2), (1, 2, 0), (2, 0, 1)}]
M = make_group_pair(S, rotations, [(0, 1, 2), (1, 0, 2)])
print("S3 = C3 . C2:", len(M.cells), "cells,", validate_matched_pair(M))

# a broken right action is reported with the offending cell
right = list(M.right_table)
right[-1] = M.H.comp[right[-1]][1]
broken = MatchedPair(M.V, M.H, M.cells, M.left_table, tuple(right))
print(validate_matched_pair(broken))

D = double(make_MXY([0, 1], "ab"))
T = make_terminal([(x, y) for x in (0, 1) for y in "ab"])
print("double of M(2,2) is the terminal pair on 4 points:", find_pair_isomorphism(D, T) is not None)

P = make_semi(coarse("AB"), "horizontal")
print("dual of the horizontal semi pair validates:", validate_matched_pair(dual(P)).ok)
print("C6 as a group pair:", len(make_group_pair(cyclic_group(6), [0, 3], [0, 2, 4]).cells), "cells")
