#ifndef COMMKERNEL_MULMOD_H
#define COMMKERNEL_MULMOD_H

#include <stdint.h>

static inline uint64_t ck_mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)(((unsigned __int128)a * b) % p);
}

static inline uint64_t ck_powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = ck_mulmod(r, a, p);
        a = ck_mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

static inline int ck_popcount(uint64_t x) {
    return __builtin_popcountll(x);
}

#endif
