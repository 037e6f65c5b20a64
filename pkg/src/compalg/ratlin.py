"""Small exact linear-algebra helpers over `fractions.Fraction` rows."""

from fractions import Fraction


def solve_square(A, b):
    """Solution of A x = b for square A, or None when A is singular."""
    n = len(A)
    work = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(A, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [e * inv for e in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * c for a, c in zip(work[r], work[col])]
    return [work[r][n] for r in range(n)]


def det(A) -> Fraction:
    n = len(A)
    work = [[Fraction(x) for x in row] for row in A]
    out = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            out = -out
        out *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                factor = work[r][col] * inv
                work[r] = [a - factor * c for a, c in zip(work[r], work[col])]
    return out


def nullity(A, ncols) -> int:
    """Dimension of the kernel of the column action of A (rows of length ncols)."""
    work = [[Fraction(x) for x in row] for row in A]
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [e * inv for e in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * c for a, c in zip(work[r], work[rank])]
        rank += 1
    return ncols - rank
