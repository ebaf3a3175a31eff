#include "sixv/rational.hpp"

#include <cctype>

namespace sixv {

Rat Rat::parse(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational literal");
    for (char ch : text) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
            throw DomainError("malformed rational literal: " + text);
    }
    mpq_class v;
    if (v.set_str(text, 10) != 0)
        throw DomainError("malformed rational literal: " + text);
    if (v.get_den() == 0)
        throw DomainError("zero denominator in rational literal: " + text);
    v.canonicalize();
    return Rat(v);
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::decimal(unsigned digits) const {
    if (is_zero()) return "0";
    mpf_class f(0, static_cast<mp_bitcnt_t>(digits * 4 + 64));
    f = v_;
    mp_exp_t exp10 = 0;
    std::string mant = f.get_str(exp10, 10, digits);
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(mant.begin());
    if (mant.empty()) return "0";
    std::string out = neg ? "-" : "";
    out += "0.";
    out += mant;
    out += "e";
    out += std::to_string(static_cast<long>(exp10));
    return out;
}

} // namespace sixv
