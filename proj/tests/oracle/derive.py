# Copyright 2026 The corrcat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Independent numpy oracle for the reference values frozen into the tests.

Run: python3 tests/oracle/derive.py
"""

import numpy as np


def partial_sums(p, n):
    p = sorted(p, reverse=True) + [0.0] * (n - len(p))
    return np.cumsum(p)


def first_violation(target, source):
    n = max(len(target), len(source))
    t, s = partial_sums(target, n), partial_sums(source, n)
    for k in range(n):
        if t[k] < s[k] - 1e-12:
            return k + 1
    return None


def outer(a, b):
    return [x * y for x in a for y in b]


def entropy(p):
    p = np.asarray(p)
    p = p[p > 1e-12]
    return float(-(p * np.log2(p)).sum())


def werner(f):
    s = np.array([0, 1, -1, 0]) / np.sqrt(2)
    proj = np.outer(s, s)
    return f * proj + (1 - f) / 3 * (np.eye(4) - proj)


def reduced_a(rho):
    return np.einsum("ijkj->ik", rho.reshape(2, 2, 2, 2))


def recurrence(f):
    q = (1 - f) / 3
    p = f * f + 2 * f * q + 5 * q * q
    return (f * f + q * q) / p, p


def rounds(f0, f1):
    n, f, copies = 0, f0, 1.0
    while f < f1:
        f, p = recurrence(f)
        copies *= 2 / p
        n += 1
    return n, copies


def brute_force_recurrence(f):
    """Two Werner copies, Y on Alice's halves, bilateral CNOT, Z on pair 2."""
    y = np.array([[0, -1j], [1j, 0]])
    i2 = np.eye(2)
    rho = np.kron(werner(f), werner(f))  # order A1 B1 A2 B2

    def op(mats):
        out = np.array([[1.0]])
        for m in mats:
            out = np.kron(out, m)
        return out

    rho = op([y, i2, y, i2]) @ rho @ op([y, i2, y, i2]).conj().T
    cnot = np.zeros((16, 16))
    for idx in range(16):
        a1, b1, a2, b2 = (idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1
        a2 ^= a1
        b2 ^= b1
        cnot[(a1 << 3) | (b1 << 2) | (a2 << 1) | b2, idx] = 1
    rho = cnot @ rho @ cnot.T
    kept = np.zeros((4, 4), dtype=complex)
    r = rho.reshape(2, 2, 2, 2, 2, 2, 2, 2)
    for o in (0, 1):
        kept += r[:, :, o, o, :, :, o, o].reshape(4, 4)
    kept = np.kron(y, i2) @ kept @ np.kron(y, i2).conj().T
    p = kept.trace().real
    s = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return (s @ kept @ s).real / p, p


def main():
    print("violation (0.4,0.4,0.1,0.1)->(0.5,0.25,0.25):", first_violation([0.5, 0.25, 0.25], [0.4, 0.4, 0.1, 0.1]))
    c = [0.6, 0.4]
    print("with catalyst (0.6,0.4):",
          first_violation(outer([0.5, 0.25, 0.25], c), outer([0.4, 0.4, 0.1, 0.1], c)))
    print("(0.8,0.2)->(0.7,0.3):", first_violation([0.7, 0.3], [0.8, 0.2]))
    w = werner(0.9)
    s_ab = entropy(np.linalg.eigvalsh(w))
    s_a = entropy(np.linalg.eigvalsh(reduced_a(w)))
    print("werner 0.9: S(AB) %.17g S(A) %.17g hashing %.17g" % (s_ab, s_a, s_a - s_ab))
    print("recurrence(0.8):", recurrence(0.8), "brute force:", brute_force_recurrence(0.8))
    print("recurrence(0.25):", recurrence(0.25))
    print("rounds 0.8->0.9:", rounds(0.8, 0.9), "rounds 0.51->0.99:", rounds(0.51, 0.99))
    print("decoupling bound at 0.02: %.17g" % (0.02 + 6 * np.sqrt(0.01)))
    # Bob's half of a singlet through a depolarizing channel of fidelity F.
    f = 0.9
    print("tau_eps singlet F=0.9: %.17g" % np.abs(np.linalg.eigvalsh(werner(f) - werner(1.0))).sum())


if __name__ == "__main__":
    main()
