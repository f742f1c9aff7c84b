#!/usr/bin/env python3
"""Exhaust small systematic code spaces against multi-burst erasures.

Reproduces the desk-scale divisibility evidence: at the minimum delay
tau* = k + (z-1)b, an [k+zb, k] code surviving every (z,b)-burst exists
only when b divides k.  The [9,5] space at delay 7 (2^20 candidates) and
the [7,3] space at delay 5 (over GF(2) and GF(3)) come up empty, while
the divisible [8,4] case has an explicit construction.
"""

import json
import time

from streamfec import GF, build_multi_burst, burst_supports, search_nonexistence, verify_delay_decodable

TASKS = [
    (9, 5, 2, 2, 7, 2),
    (7, 3, 2, 2, 5, 2),
    (7, 3, 2, 2, 5, 3),
]


def main() -> None:
    for n, k, z, b, tau, q in TASKS:
        t0 = time.time()
        res = search_nonexistence(n, k, z, b, tau, GF(q))
        print(
            json.dumps(
                {
                    "n": n, "k": k, "z": z, "b": b, "tau": tau, "gf": q,
                    "found": res["found"],
                    "candidates_checked": res["candidates_checked"],
                    "seconds": round(time.time() - t0, 2),
                }
            )
        )
    # the b | k counterpart: a [8,4] code exists and verifies at tau* = 6
    code = build_multi_burst(4, 2, 2, GF(8))
    ok = verify_delay_decodable(code, 6, burst_supports(8, 2, 2)).ok
    print(json.dumps({"n": 8, "k": 4, "z": 2, "b": 2, "tau": 6, "gf": 8, "constructed": ok}))


if __name__ == "__main__":
    main()
