"""Recompute the expected profile tables and print one line per case."""
import sys

from weylsections.tables import verify

scope = sys.argv[1] if len(sys.argv) > 1 else "summary"
rep = verify(scope)
for r in rep.results:
    labels = " ".join(str(p) for p in r.observed[:4]) + (" ..." if len(r.observed) > 4 else "")
    print(f"{'ok ' if r.ok else 'BAD'} {r.case.key:<16} M={r.modulus:<3} {labels}")
print(f"\n{len(rep.results) - len(rep.failures())}/{len(rep.results)} cases agree")
