#include "lnc/field.hpp"

#include <array>

namespace lnc {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case ErrorCode::UnsupportedExtension: return "UnsupportedExtension";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::InconsistentSystem: return "InconsistentSystem";
        case ErrorCode::InvalidNetwork: return "InvalidNetwork";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::UnknownEdge: return "UnknownEdge";
        case ErrorCode::UnknownDestination: return "UnknownDestination";
        case ErrorCode::NotVariant1: return "NotVariant1";
        case ErrorCode::NotLayered: return "NotLayered";
        case ErrorCode::FieldTooSmall: return "FieldTooSmall";
        case ErrorCode::MissingCoefficient: return "MissingCoefficient";
        case ErrorCode::InvalidAssignment: return "InvalidAssignment";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::Io: return "Io";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int bit_degree(std::uint32_t poly) {
    int d = -1;
    for (int i = 0; i < 32; ++i)
        if (poly >> i & 1u) d = i;
    return d;
}

// Carry-less multiply of two GF(2)[x] polynomials, no reduction.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

// Remainder of a modulo b over GF(2)[x].
std::uint64_t polymod(std::uint64_t a, std::uint64_t b) {
    int db = bit_degree(static_cast<std::uint32_t>(b));
    while (true) {
        int da = -1;
        for (int i = 63; i >= 0; --i)
            if (a >> i & 1u) {
                da = i;
                break;
            }
        if (da < db) return a;
        a ^= b << (da - db);
    }
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// Multiplication in GF(2^m) by shift-and-reduce; used only while building
// the log/antilog tables and during generator search.
std::uint32_t gf2m_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, std::uint32_t m) {
    std::uint64_t prod = clmul(a, b);
    std::uint64_t mask = 1ull << m;
    for (int i = 2 * static_cast<int>(m); i >= static_cast<int>(m); --i)
        if (prod >> i & 1u) prod ^= static_cast<std::uint64_t>(poly) << (i - m);
    (void)mask;
    return static_cast<std::uint32_t>(prod);
}

std::uint32_t gf2m_pow(std::uint32_t a, std::uint32_t e, std::uint32_t poly, std::uint32_t m) {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1u) r = gf2m_mul(r, a, poly, m);
        a = gf2m_mul(a, a, poly, m);
        e >>= 1;
    }
    return r;
}

} // namespace

std::uint32_t Field::default_poly(std::uint32_t m) {
    // Published low-weight irreducible polynomials; m = 8 is the one from
    // the AES standard. Each entry is verified by the irreducibility check
    // in the unit tests.
    static constexpr std::array<std::uint32_t, 17> table = {
        0, 0,
        0x7,     // x^2+x+1
        0xB,     // x^3+x+1
        0x13,    // x^4+x+1
        0x25,    // x^5+x^2+1
        0x43,    // x^6+x+1
        0x83,    // x^7+x+1
        0x11B,   // x^8+x^4+x^3+x+1
        0x211,   // x^9+x^4+1
        0x409,   // x^10+x^3+1
        0x805,   // x^11+x^2+1
        0x1053,  // x^12+x^6+x^4+x+1
        0x201B,  // x^13+x^4+x^3+x+1
        0x4443,  // x^14+x^10+x^6+x+1
        0x8003,  // x^15+x+1
        0x1100B, // x^16+x^12+x^3+x+1
    };
    if (m < 2 || m > 16) fail(ErrorCode::FieldTooLarge, "no default polynomial for m=" + std::to_string(m));
    return table[m];
}

bool Field::is_irreducible_gf2(std::uint32_t poly, std::uint32_t m) {
    if (bit_degree(poly) != static_cast<int>(m)) return false;
    if ((poly & 1u) == 0) return false; // divisible by x
    for (std::uint32_t d = 1; d <= m / 2; ++d) {
        for (std::uint32_t low = 0; low < (1u << d); ++low) {
            std::uint32_t divisor = (1u << d) | low;
            if (polymod(poly, divisor) == 0) return false;
        }
    }
    return true;
}

FieldRef Field::make(std::uint32_t p, std::uint32_t m, std::uint32_t poly) {
    if (!is_prime(p)) fail(ErrorCode::NonPrimeCharacteristic, "p=" + std::to_string(p));
    if (m < 1) fail(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    if (m > 1 && p != 2) fail(ErrorCode::UnsupportedExtension, "extension fields require p=2");

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > 65536ull) fail(ErrorCode::FieldTooLarge, "p^m exceeds 2^16");
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = static_cast<std::uint32_t>(q);
    if (m == 1) {
        f->poly_ = 0;
    } else {
        f->poly_ = poly == 0 ? default_poly(m) : poly;
        if (bit_degree(f->poly_) != static_cast<int>(m))
            fail(ErrorCode::ReduciblePolynomial,
                 "reduction polynomial must have degree " + std::to_string(m));
        if (!is_irreducible_gf2(f->poly_, m))
            fail(ErrorCode::ReduciblePolynomial, "reduction polynomial is not irreducible");
        f->build_tables();
    }
    return f;
}

void Field::build_tables() {
    // Find a generator of the multiplicative group: order q-1 exactly.
    std::uint32_t order = q_ - 1;
    auto factors = prime_factors(order);
    std::uint32_t g = 0;
    for (std::uint32_t cand = 2; cand < q_; ++cand) {
        bool ok = true;
        for (std::uint32_t r : factors) {
            if (gf2m_pow(cand, order / r, poly_, m_) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) fail(ErrorCode::ReduciblePolynomial, "no multiplicative generator found");

    exp_.assign(order, 0);
    log_.assign(q_, 0);
    std::uint32_t acc = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
        exp_[i] = static_cast<std::uint16_t>(acc);
        log_[acc] = static_cast<std::uint16_t>(i);
        acc = gf2m_mul(acc, g, poly_, m_);
    }
}

std::uint16_t Field::add(std::uint16_t a, std::uint16_t b) const {
    if (m_ > 1) return a ^ b;
    return static_cast<std::uint16_t>((static_cast<std::uint32_t>(a) + b) % p_);
}

std::uint16_t Field::neg(std::uint16_t a) const {
    if (m_ > 1) return a;
    return a == 0 ? 0 : static_cast<std::uint16_t>(p_ - a);
}

std::uint16_t Field::sub(std::uint16_t a, std::uint16_t b) const { return add(a, neg(b)); }

std::uint16_t Field::mul(std::uint16_t a, std::uint16_t b) const {
    if (m_ > 1) {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        std::uint32_t order = q_ - 1;
        if (s >= order) s -= order;
        return exp_[s];
    }
    return static_cast<std::uint16_t>(static_cast<std::uint32_t>(a) * b % p_);
}

std::uint16_t Field::inv(std::uint16_t a) const {
    if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
    if (m_ > 1) {
        std::uint32_t order = q_ - 1;
        return exp_[(order - log_[a]) % order];
    }
    // Extended Euclid over Z_p.
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
        std::int64_t quo = r / nr;
        std::int64_t tmp = t - quo * nt;
        t = nt;
        nt = tmp;
        tmp = r - quo * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<std::uint16_t>(t);
}

std::uint16_t Field::div(std::uint16_t a, std::uint16_t b) const { return mul(a, inv(b)); }

std::uint16_t Field::pow(std::uint16_t a, std::uint64_t e) const {
    std::uint16_t r = 1;
    while (e) {
        if (e & 1u) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::string Field::name() const {
    if (m_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(2^" + std::to_string(m_) + ")";
}

} // namespace lnc
