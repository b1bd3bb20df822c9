#include "romanov/rational.hpp"

#include "romanov/errors.hpp"

namespace romanov {

ExactRational::ExactRational(const BigInt& numerator, const BigInt& denominator)
{
    if (denominator == 0)
        throw DomainError("rational with zero denominator");
    q_ = mpq_class(numerator, denominator);
    q_.canonicalize();
}

ExactRational& ExactRational::operator/=(const ExactRational& o)
{
    if (o.q_ == 0)
        throw DomainError("rational division by zero");
    q_ /= o.q_;
    return *this;
}

BigInt ExactRational::floor() const
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

double ExactRational::to_double() const { return q_.get_d(); }

std::string ExactRational::to_string() const
{
    if (is_integer())
        return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace romanov
