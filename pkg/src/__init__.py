"""maolperm: automorphism orbit lengths of finite transitive permutation groups.

Permutation groups with stabilizer chains, automorphism groups by
backtracking, the subgroup Aut_perm(G) induced by the normaliser in the
symmetric group, and verifiers that recompute the published maol_perm
values and bounds.
"""
