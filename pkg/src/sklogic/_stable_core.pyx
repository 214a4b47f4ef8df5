# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stable-model enumeration kernel.

Mirror of _stable_core_py.enumerate_stable; see that module for the
algorithm notes.  Atom counts are capped well below 64, so plain uint64
masks cover every interpretation.
"""

from libc.stdlib cimport free, malloc


def enumerate_stable(int num_atoms, list heads, list pos, list neg, list cpos, list cneg):
    cdef int nrules = len(heads)
    cdef int ncons = len(cpos)
    cdef unsigned long long *h = NULL
    cdef unsigned long long *p = NULL
    cdef unsigned long long *n = NULL
    cdef unsigned long long *cp = NULL
    cdef unsigned long long *cn = NULL
    cdef unsigned long long head_mask = 0, fact_mask = 0
    cdef unsigned long long total, s, m, t, val
    cdef int free_pos[64]
    cdef int nfree = 0
    cdef int i, c, j
    cdef bint violated, stable, changed

    if num_atoms > 62:
        raise ValueError("kernel supports at most 62 atoms")

    h = <unsigned long long *> malloc((nrules + 1) * sizeof(unsigned long long))
    p = <unsigned long long *> malloc((nrules + 1) * sizeof(unsigned long long))
    n = <unsigned long long *> malloc((nrules + 1) * sizeof(unsigned long long))
    cp = <unsigned long long *> malloc((ncons + 1) * sizeof(unsigned long long))
    cn = <unsigned long long *> malloc((ncons + 1) * sizeof(unsigned long long))
    if h == NULL or p == NULL or n == NULL or cp == NULL or cn == NULL:
        free(h); free(p); free(n); free(cp); free(cn)
        raise MemoryError()

    try:
        for i in range(nrules):
            h[i] = heads[i]
            p[i] = pos[i]
            n[i] = neg[i]
            head_mask |= h[i]
            if p[i] == 0 and n[i] == 0:
                fact_mask |= h[i]
        for c in range(ncons):
            cp[c] = cpos[c]
            cn[c] = cneg[c]

        # atoms whose every rule negates the atom itself can never be in a
        # stable model (the fail <- body, not fail shape)
        for j in range(num_atoms):
            m = (<unsigned long long> 1) << j
            if not (head_mask & m) or (fact_mask & m):
                continue
            violated = True
            for i in range(nrules):
                if h[i] == m and not (n[i] & m):
                    violated = False
                    break
            if violated:
                head_mask &= ~m

        for j in range(num_atoms):
            if (head_mask >> j) & 1 and not (fact_mask >> j) & 1:
                free_pos[nfree] = j
                nfree += 1
        if nfree > 40:
            raise ValueError("too many undetermined atoms to enumerate")

        models = []
        total = (<unsigned long long> 1) << nfree
        for s in range(total):
            m = fact_mask
            t = s
            j = 0
            while t:
                if t & 1:
                    m |= (<unsigned long long> 1) << free_pos[j]
                t >>= 1
                j += 1

            violated = False
            for c in range(ncons):
                if (m & cp[c]) == cp[c] and (m & cn[c]) == 0:
                    violated = True
                    break
            if violated:
                continue

            val = 0
            stable = True
            changed = True
            while changed:
                changed = False
                for i in range(nrules):
                    if val & h[i]:
                        continue
                    if n[i] & m:
                        continue
                    if (p[i] & val) == p[i]:
                        if not (h[i] & m):
                            stable = False
                            changed = False
                            break
                        val |= h[i]
                        changed = True
                if not stable:
                    break
            if stable and val == m:
                models.append(m)
        return models
    finally:
        free(h)
        free(p)
        free(n)
        free(cp)
        free(cn)
