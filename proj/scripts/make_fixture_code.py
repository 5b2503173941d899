#!/usr/bin/env python3
"""Generate the random LDPC test fixtures shipped under tests/data/.

Column degree 3, row degrees balanced, girth >= 6 (no two columns share two
rows), full row rank over GF(2). Pure-Python on purpose: the fixtures are
produced independently of the C++ library they exercise.
"""

import argparse
import random


def gf2_rank(rows, ncols):
    mat = [r.copy() for r in rows]
    rank = 0
    pivot_row = 0
    for c in range(ncols):
        sel = None
        for r in range(pivot_row, len(mat)):
            if mat[r][c]:
                sel = r
                break
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][c]:
                mat[r] = [a ^ b for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank


def sample_code(m, n, col_deg, rng):
    row_sets = [set() for _ in range(m)]
    col_rows = []
    for c in range(n):
        for _ in range(4000):
            # bias toward underfilled rows to keep degrees balanced
            weights = [1.0 / (1 + len(row_sets[r])) ** 2 for r in range(m)]
            picks = set()
            while len(picks) < col_deg:
                picks.add(rng.choices(range(m), weights=weights)[0])
            picks = sorted(picks)
            # girth >= 6: no previous column may share two of these rows
            ok = True
            for rows_of_prev in col_rows:
                if len(set(picks) & set(rows_of_prev)) >= 2:
                    ok = False
                    break
            if ok:
                break
        else:
            return None
        col_rows.append(picks)
        for r in picks:
            row_sets[r].add(c)
    if any(not s for s in row_sets):
        return None
    dense = [[0] * n for _ in range(m)]
    for c, rows_of_c in enumerate(col_rows):
        for r in rows_of_c:
            dense[r][c] = 1
    if gf2_rank(dense, n) != m:
        return None
    return [sorted(row_sets[r]) for r in range(m)]


def write_alist(path, m, n, rows):
    cols = [[] for _ in range(n)]
    for r, row in enumerate(rows):
        for c in row:
            cols[c].append(r)
    max_col = max(len(c) for c in cols)
    max_row = max(len(r) for r in rows)
    with open(path, "w") as fh:
        fh.write(f"{n} {m}\n{max_col} {max_row}\n")
        fh.write(" ".join(str(len(c)) for c in cols) + "\n")
        fh.write(" ".join(str(len(r)) for r in rows) + "\n")
        for c in cols:
            entries = [str(r + 1) for r in c] + ["0"] * (max_col - len(c))
            fh.write(" ".join(entries) + "\n")
        for r in rows:
            entries = [str(c + 1) for c in r] + ["0"] * (max_row - len(r))
            fh.write(" ".join(entries) + "\n")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--rows", type=int, default=48)
    parser.add_argument("--cols", type=int, default=96)
    parser.add_argument("--col-deg", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for attempt in range(1000):
        rows = sample_code(args.rows, args.cols, args.col_deg, rng)
        if rows is not None:
            write_alist(args.out, args.rows, args.cols, rows)
            degs = sorted(len(r) for r in rows)
            print(f"ok after {attempt + 1} attempts; row degrees {degs[0]}..{degs[-1]}")
            return
    raise SystemExit("no full-rank girth-6 sample found")


if __name__ == "__main__":
    main()
