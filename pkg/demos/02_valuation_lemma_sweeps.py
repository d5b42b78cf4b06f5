"""Brute-force verification of the conjugation valuation lemmas.

Sweeps every nonzero lattice vector in a coordinate box against every
norm-p quaternion and confirms, with zero violations:

  * v_p never drops and rises by at most 2 under beta -> alpha' beta bar(alpha);
  * v_q at any other odd prime q is untouched;
  * at most two of the p+1 orbit representatives change v_p;
  * >16 conjugates divisible by p^2 forces p^2 | delta itself.

Run:  python demos/02_valuation_lemma_sweeps.py [bound]
"""

import sys
import time

from h4hecke.quaternions import verify_conjugation_lemmas

bound = int(sys.argv[1]) if len(sys.argv) > 1 else 12

for p in (3, 5, 7):
    qs = tuple(q for q in (3, 5, 7, 11) if q != p)
    t0 = time.time()
    report = verify_conjugation_lemmas(p, bound, q_primes=qs)
    dt = time.time() - t0
    print(f"p = {p} (bound {bound}, q in {qs}):")
    print(f"  {report.beta_count} lattice vectors x {report.alpha_count} quaternions "
          f"= {report.pairs_checked} pairs in {dt:.2f}s, {report.violations} violations")
    print(f"  max v_p jump {report.max_vp_jump} (bound 2), "
          f"max changed representatives {report.max_unequal_reps} (bound 2), "
          f"max |I(beta)| {report.max_exceptional_set} (bound 2)")
    print(f"  largest p^2-divisibility count among v_p = 0 vectors: "
          f"{report.squared_divisibility_max_small} (criterion threshold 16)")
    print()
