#!/usr/bin/env python3
"""Writes the small benchmark maps and scenarios under data/.

benchmark-a and benchmark-b are approximate reconstructions of the two small
benchmarks (6x6 open grid with 8 crossing agents; three-bridge corridor with
6 agents). random-32-32-10 is a seeded stand-in with the same shape as the
MovingAI map of that name (32x32, 10% blocked cells).
"""

import random
import sys
from collections import deque
from pathlib import Path


def write_map(path, rows):
    h, w = len(rows), len(rows[0])
    with open(path, "w") as f:
        f.write(f"type octile\nheight {h}\nwidth {w}\nmap\n")
        for r in rows:
            f.write(r + "\n")


def bfs(rows, start):
    h, w = len(rows), len(rows[0])
    dist = {start: 0}
    q = deque([start])
    while q:
        x, y = q.popleft()
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nx, ny = x + dx, y + dy
            if 0 <= nx < w and 0 <= ny < h and rows[ny][nx] == "." and (nx, ny) not in dist:
                dist[(nx, ny)] = dist[(x, y)] + 1
                q.append((nx, ny))
    return dist


def write_scen(path, map_name, rows, pairs):
    h, w = len(rows), len(rows[0])
    with open(path, "w") as f:
        f.write("version 1\n")
        for (sx, sy), (gx, gy) in pairs:
            d = bfs(rows, (sx, sy))[(gx, gy)]
            f.write(f"0\t{map_name}\t{w}\t{h}\t{sx}\t{sy}\t{gx}\t{gy}\t{d}\n")


def flip(h, cells):
    # figure coordinates have y pointing up; map rows count downwards
    return [(x, h - 1 - y) for x, y in cells]


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)

    a = ["......"] * 6
    starts = flip(6, [(0, 3), (0, 1), (2, 0), (4, 0), (5, 2), (5, 4), (3, 5), (1, 5)])
    goals = flip(6, [(5, 3), (5, 1), (2, 5), (4, 5), (0, 2), (0, 4), (3, 0), (1, 0)])
    write_map(out / "benchmark-a.map", a)
    write_scen(out / "benchmark-a.scen", "benchmark-a.map", a, list(zip(starts, goals)))

    b = ["......", "..@@..", "......", "..@@..", "......"]
    starts = flip(5, [(0, 0), (0, 2), (0, 4), (5, 0), (5, 2), (5, 4)])
    goals = flip(5, [(5, 0), (5, 2), (5, 4), (0, 0), (0, 2), (0, 4)])
    write_map(out / "benchmark-b.map", b)
    write_scen(out / "benchmark-b.scen", "benchmark-b.map", b, list(zip(starts, goals)))

    p2 = [".."]
    write_map(out / "p2.map", p2)
    write_scen(out / "p2.scen", "p2.map", p2, [((0, 0), (1, 0)), ((1, 0), (0, 0))])

    c4 = ["..", ".."]
    write_map(out / "c4.map", c4)
    write_scen(out / "c4.scen", "c4.map", c4, [((0, 0), (1, 1)), ((1, 1), (0, 0))])

    c8 = ["...", ".@.", "..."]
    ring = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]
    write_map(out / "c8.map", c8)
    write_scen(out / "c8.scen", "c8.map", c8, [(ring[i], ring[(i + 4) % 8]) for i in range(7)])

    rng = random.Random(32321)
    size = 32
    cells = [(x, y) for y in range(size) for x in range(size)]
    blocked = set(rng.sample(cells, size * size // 10))
    grid = ["".join("@" if (x, y) in blocked else "." for x in range(size)) for y in range(size)]
    seen, best = set(), set()
    for c in cells:
        if c in blocked or c in seen:
            continue
        comp = set(bfs(grid, c))
        seen |= comp
        if len(comp) > len(best):
            best = comp
    free = sorted(best, key=lambda c: (c[1], c[0]))
    starts = rng.sample(free, 100)
    goals = rng.sample(free, 100)
    write_map(out / "random-32-32-10.map", grid)
    write_scen(out / "random-32-32-10.scen", "random-32-32-10.map", grid, list(zip(starts, goals)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data")
