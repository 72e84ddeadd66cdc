#include "eoq/rational.hpp"

#include "eoq/errors.hpp"

namespace eoq {

Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw ParseError("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw ParseError("zero denominator in rational literal: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

bool rat_is_integer(const Rational& q) {
    return q.get_den() == 1;
}

long rat_to_long(const Rational& q) {
    if (!rat_is_integer(q) || !q.get_num().fits_slong_p())
        throw std::invalid_argument("rational does not fit a machine integer");
    return q.get_num().get_si();
}

} // namespace eoq
