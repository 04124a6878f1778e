"""Pure-Python kernels. Same signatures and results as ``_core``."""


def match_starts(digits, block, stop):
    """0-based starts ``i`` of (overlapping) occurrences of ``block`` in ``digits``
    with ``i + len(block) <= stop``."""
    out = []
    width = len(block)
    i = digits.find(block, 0, stop)
    while i != -1:
        out.append(i)
        i = digits.find(block, i + 1, stop)
    return out if width else []


def count_admissible(t, ones_mask, gaps):
    """Count ``t``-bit words that carry every forced 1 and every forced gap.

    ``gaps`` holds ``(prefix_shift, gap_shift, gap_mask, table)`` tuples:
    a word ``x`` passes when ``table[x >> prefix_shift] == (x >> gap_shift) & gap_mask``.
    Table entries of -1 mark prefixes that are not admissible at all.
    """
    total = 0
    for x in range(1 << t):
        if x & ones_mask != ones_mask:
            continue
        for prefix_shift, gap_shift, gap_mask, table in gaps:
            if table[x >> prefix_shift] != (x >> gap_shift) & gap_mask:
                break
        else:
            total += 1
    return total
