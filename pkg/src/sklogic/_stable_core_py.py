"""Pure-Python stable-model enumeration kernel.

Same contract as the compiled extension: given bitmask-encoded rules and
constraints, return every stable model as an integer bitmask, ascending.

Two sound prefilters cut the search: a stable model must contain every
fact head (facts survive any reduct) and cannot contain a non-head atom
(the minimal model only ever adds heads).  Enumeration therefore walks the
free bits between those two masks; each candidate is checked against the
constraints, then against the least fixpoint of its reduct, bailing out as
soon as the fixpoint leaves the candidate.
"""


def enumerate_stable(num_atoms, heads, pos, neg, cpos, cneg):
    nrules = len(heads)
    head_mask = 0
    fact_mask = 0
    for i in range(nrules):
        head_mask |= heads[i]
        if pos[i] == 0 and neg[i] == 0:
            fact_mask |= heads[i]

    # an atom whose every rule negates the atom itself can never be in a
    # stable model: including it deletes all of its support (this is the
    # shape of fail <- body, not fail, so encoded constraints stay cheap)
    blocked = 0
    for b in range(num_atoms):
        bit = 1 << b
        if not (head_mask & bit) or (fact_mask & bit):
            continue
        if all(neg[i] & bit for i in range(nrules) if heads[i] == bit):
            blocked |= bit
    head_mask &= ~blocked

    free = []
    b = head_mask & ~fact_mask
    pot = 1
    while pot <= b:
        if b & pot:
            free.append(pot)
        pot <<= 1
    nfree = len(free)
    if nfree > 40:
        raise ValueError(f"too many undetermined atoms to enumerate ({nfree})")

    ncons = len(cpos)
    models = []
    rng = range(nrules)
    crng = range(ncons)
    for s in range(1 << nfree):
        m = fact_mask
        t = s
        j = 0
        while t:
            if t & 1:
                m |= free[j]
            t >>= 1
            j += 1

        violated = False
        for c in crng:
            if (m & cpos[c]) == cpos[c] and (m & cneg[c]) == 0:
                violated = True
                break
        if violated:
            continue

        val = 0
        stable = True
        changed = True
        while changed:
            changed = False
            for i in rng:
                h = heads[i]
                if val & h:
                    continue
                if neg[i] & m:
                    continue
                if (pos[i] & val) == pos[i]:
                    if not (h & m):
                        stable = False
                        changed = False
                        break
                    val |= h
                    changed = True
            if not stable:
                break
        if stable and val == m:
            models.append(m)
    return models
