"""
Common index jumps and the counting ledger
===========================================

Given finitely many closed-geodesic models, a common index jump picks
iterates 2m_j whose indices all sit near one even number 2N.  The degrees
just above 2N must then be carried by distinct models at distinct energies,
and two rational mean indices cannot both be visible.  This script replays
that bookkeeping on a bundled six-dimensional ensemble.
"""

from sympindex.index_jump import find_jump
from sympindex.io import bundled, parse_ensemble
from sympindex.ledger import hypothesis_check, rational_average_audit, visible_map, window_degrees

ens = parse_ensemble(bundled("n6_pinched"))
print("models:", [(m.id, round(float(m.mean_index()), 4), round(m.length, 4)) for m in ens.models])
print("hypotheses hold:", hypothesis_check(ens)["ok"])

# search N upward; every certificate is verified before it is returned
certs = find_jump(ens.profiles(), 2, n=ens.n)
for c in certs:
    print(f"N={c.N}  m={c.m}  χ={c.chi}  smallest slack {c.verification.min_slack}")

# the window above 2N and who carries each degree
c = certs[0]
print("window degrees:", [q for _, q in window_degrees(c.N, ens.n, ens.dim_z)])
vm = visible_map(ens, c)
for q, (mid, m, energy) in sorted(vm.assignment.items()):
    print(f"  q={q} ← {mid}^{m}  energy {energy:.6g}")

# at most one visible model may have a rational mean index
audit = rational_average_audit(ens, certs)
print("forced irrational:", audit["forced_irrational"], "bound:", audit["bound"])

# a second ensemble with two rational models shows the contradiction
bad = parse_ensemble(bundled("n6_two_rational"))
audit = rational_average_audit(bad, find_jump(bad.profiles(), 1, n=bad.n))
pair = audit["certificates"][0]["contradictions"][0]
print("rational pair", pair["pair"], "2m·î = 2N:", pair["equal_via_jump"], "energies:", pair["kappas"])
