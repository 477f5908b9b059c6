"""Enumerate matched pairs of rotations and certify the braidings they induce."""
from matchedpairs import (canonical_double_pair, certify_braiding, double, enumerate_rotation_pairs,
                          enumerate_rotations, fleet)

for name in ("S3", "C6", "semi_h_S3"):
    M = fleet.get(name)
    DM = double(M)
    rots = list(enumerate_rotations(DM))
    pairs = enumerate_rotation_pairs(DM, rots)
    can = canonical_double_pair(M, DM)
    print(f"D({name}): {len(rots)} rotations, {len(pairs)} matched pairs, canonical found: {can in pairs}")

M = fleet.get("S3")
DM = double(M)
rep = certify_braiding(DM, canonical_double_pair(M, DM))
print("canonical braiding on D(S3):", rep)
