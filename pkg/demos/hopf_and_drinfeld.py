"""The weak Hopf algebra k(V,H), an R-matrix, and the Drinfeld double isomorphism."""
from matchedpairs import (DrinfeldDouble, build_weak_hopf, certify_drinfeld_iso, certify_r_matrix,
                          certify_weak_hopf, drinfeld_element, enumerate_rotation_pairs, fleet, r_matrix)

M = fleet.get("MXY22")
W = build_weak_hopf(M)
print(certify_weak_hopf(W))

C = fleet.get("conj_coarse2")
Wc = build_weak_hopf(C)
for p in enumerate_rotation_pairs(C):
    R = r_matrix(Wc, p)
    print("R has", len(R), "terms;", certify_r_matrix(Wc, R))
    print("Drinfeld element:", {Wc.label(i): v for i, v in drinfeld_element(Wc, R)})

DD = DrinfeldDouble(fleet.get("S3"))
print("Drinfeld double of k(S3 pair): dim", DD.dim, ";", certify_drinfeld_iso(DD))
