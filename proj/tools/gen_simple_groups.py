#!/usr/bin/env python3
"""Generate data/simple_groups.json: nonabelian simple groups of Lie type
(classical families only) with order <= 1e10, excluding those isomorphic to
alternating groups, which are recognised by the m!/2 pattern instead.

max_alt_section is only filled in for entries whose value is certified by the
test suite (tests/test_structure.cpp, "certified alternating sections").
"""
import json
from math import gcd

LIMIT = 10**10


def prime_powers(limit):
    out = []
    for n in range(2, limit + 1):
        m, p = n, None
        for d in range(2, n + 1):
            if m % d == 0:
                p = d
                break
        while m % p == 0:
            m //= p
        if m == 1:
            out.append(n)
    return out


def prod(xs):
    r = 1
    for x in xs:
        r *= x
    return r


def psl(n, q):
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(2, n + 1)) // gcd(n, q - 1)


def psu(n, q):
    return q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(2, n + 1)) // gcd(n, q + 1)


def psp(l, q):
    return q ** (l * l) * prod(q ** (2 * i) - 1 for i in range(1, l + 1)) // gcd(2, q - 1)


def pomega_plus(l, q):
    return q ** (l * (l - 1)) * (q**l - 1) * prod(q ** (2 * i) - 1 for i in range(1, l)) // gcd(4, q**l - 1)


def pomega_minus(l, q):
    return q ** (l * (l - 1)) * (q**l + 1) * prod(q ** (2 * i) - 1 for i in range(1, l)) // gcd(4, q**l + 1)


entries = []
qs = prime_powers(5000)
alt_iso = {("L", 2, 4), ("L", 2, 5), ("L", 2, 9), ("L", 4, 2)}
for n in range(2, 12):
    for q in qs:
        if n == 2 and q <= 3:
            continue
        o = psl(n, q)
        if o > LIMIT:
            break
        if ("L", n, q) in alt_iso:
            continue
        if (n, q) == (2, 7):
            name = "L3(2)"  # L2(7) is the same group
        else:
            name = f"L{n}({q})"
        if n == 3 and q == 2:
            continue
        entries.append({"name": name, "order": o})
for n in range(3, 12):
    for q in qs:
        o = psu(n, q)
        if o > LIMIT:
            break
        if (n, q) == (3, 2):
            continue  # solvable
        entries.append({"name": f"U{n}({q})", "order": o})
for l in range(2, 8):
    for q in qs:
        o = psp(l, q)
        if o > LIMIT:
            break
        if (l, q) == (2, 2):
            continue  # Sp4(2)' = A6
        if (l, q) == (2, 3):
            continue  # PSp4(3) = U4(2)
        name = f"Sp{2*l}({q})" if q % 2 == 0 else f"PSp{2*l}({q})"
        entries.append({"name": name, "order": o})
        if q % 2 == 1 and l >= 3:
            entries.append({"name": f"O{2*l+1}({q})", "order": o})
for l in range(4, 8):
    for q in qs:
        o = pomega_plus(l, q)
        if o > LIMIT:
            break
        entries.append({"name": f"O{2*l}+({q})", "order": o})
    for q in qs:
        o = pomega_minus(l, q)
        if o > LIMIT:
            break
        entries.append({"name": f"O{2*l}-({q})", "order": o})

by_order = {}
for e in entries:
    by_order.setdefault(e["order"], []).append(e)

certified = {"Sp6(2)": 8, "U4(2)": 6}
out = []
for e in sorted(entries, key=lambda e: (e["order"], e["name"])):
    rec = {"order": str(e["order"]), "name": e["name"],
           "max_alt_section": certified.get(e["name"]), "disambiguator": None}
    if len(by_order[e["order"]]) > 1:
        rec["disambiguator"] = "unresolved-order-collision"
    if e["name"] == "L3(4)":
        rec["disambiguator"] = "A8-has-element-of-order-15"
    out.append(rec)

print(json.dumps({"schema": "permres-simple-groups", "version": 1,
                  "max_order": str(LIMIT), "groups": out}, indent=1))
