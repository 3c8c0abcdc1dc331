#include "sievelab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sievelab {

Ratio make_ratio(const Int& num, const Int& den) {
    if (den == 0) throw precondition_error("ratio denominator must be nonzero");
    Ratio r(num, den);
    r.canonicalize();
    return r;
}

std::string ratio_str(const Ratio& r) {
    return r.get_str();  // GMP prints "num/den", or "num" when den == 1
}

std::string ratio_approx(const Ratio& r, int digits) {
    if (r == 0) return "0";
    // Enough bits for the requested decimal digits plus slack.
    mpf_class f(r, static_cast<mp_bitcnt_t>(digits * 4 + 64));
    mp_exp_t exp10 = 0;
    std::string mant = f.get_str(exp10, 10, static_cast<size_t>(digits));
    bool neg = !mant.empty() && mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    if (d.empty()) return "0";

    std::string out;
    if (exp10 >= 1 && exp10 <= digits + 3) {
        // Fixed notation: exp10 digits before the point.
        if (static_cast<size_t>(exp10) >= d.size()) {
            out = d + std::string(static_cast<size_t>(exp10) - d.size(), '0');
        } else {
            out = d.substr(0, static_cast<size_t>(exp10)) + "." +
                  d.substr(static_cast<size_t>(exp10));
        }
    } else if (exp10 <= 0 && exp10 > -4) {
        out = "0." + std::string(static_cast<size_t>(-exp10), '0') + d;
    } else {
        // Scientific: d.dddde+XX
        out = d.substr(0, 1);
        if (d.size() > 1) out += "." + d.substr(1);
        std::ostringstream os;
        os << out << "e" << (exp10 - 1 >= 0 ? "+" : "") << (exp10 - 1);
        out = os.str();
    }
    return neg ? "-" + out : out;
}

std::vector<uint64_t> primes_up_to(uint64_t limit) {
    if (limit < 2) throw precondition_error("primes_up_to requires limit >= 2");
    std::vector<bool> composite(limit + 1, false);
    std::vector<uint64_t> primes;
    for (uint64_t n = 2; n <= limit; ++n) {
        if (composite[n]) continue;
        primes.push_back(n);
        for (uint64_t m = n * n; m <= limit; m += n) composite[m] = true;
    }
    return primes;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

uint64_t next_prime(uint64_t p) {
    uint64_t n = p + 1;
    while (!is_prime(n)) ++n;
    return n;
}

Int primorial(uint64_t p) {
    if (!is_prime(p)) throw precondition_error("primorial requires a prime");
    Int result = 1;
    for (uint64_t q : primes_up_to(p)) result *= Int(q);
    return result;
}

SquarefreeKernel SquarefreeKernel::of(uint64_t n) {
    if (n == 0) throw precondition_error("kernel of 0 is undefined");
    std::vector<uint64_t> primes;
    uint64_t rest = n;
    for (uint64_t d = 2; d * d <= rest; d == 2 ? d = 3 : d += 2) {
        if (rest % d != 0) continue;
        primes.push_back(d);
        while (rest % d == 0) rest /= d;
    }
    if (rest > 1) primes.push_back(rest);
    return SquarefreeKernel(std::move(primes));
}

SquarefreeKernel::SquarefreeKernel(std::vector<uint64_t> primes)
    : primes_(std::move(primes)) {
    for (size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            throw precondition_error("kernel entries must be prime");
        if (i > 0 && primes_[i - 1] >= primes_[i])
            throw precondition_error("kernel must be strictly ascending");
    }
}

Int SquarefreeKernel::product() const {
    Int result = 1;
    for (uint64_t q : primes_) result *= Int(q);
    return result;
}

Int phi_i(const SquarefreeKernel& kernel, uint64_t i) {
    if (i < 1) throw precondition_error("phi_i requires i >= 1");
    Int result = 1;
    for (uint64_t q : kernel.primes())
        if (q > i) result *= Int(q - i);
    return result;
}

Int phi_i_primorial(uint64_t p, uint64_t i) {
    if (!is_prime(p)) throw precondition_error("phi_i_primorial requires a prime stage");
    if (i < 1) throw precondition_error("phi_i requires i >= 1");
    Int result = 1;
    for (uint64_t q : primes_up_to(p))
        if (q > i) result *= Int(q - i);
    return result;
}

}  // namespace sievelab
