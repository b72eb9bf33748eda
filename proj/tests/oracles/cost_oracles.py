#!/usr/bin/env python3
# Copyright (c) 2026, The swarmkd Authors
# SPDX-License-Identifier: Apache-2.0
#
# Independent reference values frozen into the C++ unit tests. Uses per-tensor
# shape enumeration and brute-force counting, not the closed forms in core/.
from itertools import product
from math import prod

vocab = list(range(1000, 50001, 1000))
layers = list(range(1, 13))
hidden = list(range(16, 769, 16))
inter = list(range(16, 3073, 32))
heads = list(range(1, 13))
lrs = [1e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3, 2e-3]

print("grid sizes", len(vocab), len(layers), len(hidden), len(inter), len(heads), len(lrs))
print("cardinality (no divisibility)", len(vocab) * len(layers) * len(hidden) * len(inter) * len(heads) * len(lrs))
pairs = sum(1 for h, a in product(hidden, heads) if h % a == 0)
print("valid (hidden, heads) pairs", pairs)
print("cardinality (divisibility)", len(vocab) * len(layers) * pairs * len(inter) * len(lrs))


def shapes(v, L, h, i, seq=512, classes=4):
    out = [(v, h), (seq, h), (1, h), (h,), (h,)]
    for _ in range(L):
        for _ in range(4):
            out += [(h, h), (h,)]
        out += [(h,), (h,)]
        out += [(h, i), (i,), (i, h), (h,)]
        out += [(h,), (h,)]
    out += [(h, h), (h,), (h, classes), (classes,)]
    return out


def params(*a):
    return sum(prod(s) for s in shapes(*a))


def gflops_terms(L, h, i, n):
    qkvo = 4 * (2 * n * h * h)
    scores = 2 * n * n * h
    mix = 2 * n * n * h
    ffn = 2 * n * h * i + 2 * n * i * h
    return L * (qkvo + scores + mix + ffn) / 1e9


print("teacher params", params(50265, 12, 768, 3072))
print("teacher size_mb %.12f" % (params(50265, 12, 768, 3072) * 4 / 2**20))
print("tiny params", params(1000, 1, 16, 16))
print("teacher gflops n=512 %.12f" % gflops_terms(12, 768, 3072, 512))
print("teacher gflops n=256 %.12f" % gflops_terms(12, 768, 3072, 256))
print("tiny gflops n=512 %.15f" % gflops_terms(1, 16, 16, 512))
