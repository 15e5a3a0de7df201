#include "prodsq/analytic_bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <mpfr.h>

#include "prodsq/compensated_sum.hpp"

namespace prodsq {

namespace {

class BigFloat {
public:
    BigFloat()
    {
        mpfr_init2(v_, kHighPrecisionBits);
        mpfr_set_ui(v_, 0, MPFR_RNDN);
    }
    BigFloat(const BigFloat&) = delete;
    BigFloat& operator=(const BigFloat&) = delete;
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

void add_log_ratio(BigFloat& acc, u64 p)
{
    // acc += log(p) / (p - 1)
    BigFloat term;
    mpfr_set_ui(term.get(), static_cast<unsigned long>(p), MPFR_RNDN);
    mpfr_log(term.get(), term.get(), MPFR_RNDN);
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(p - 1), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
}

void add_log(BigFloat& acc, u64 x)
{
    BigFloat term;
    mpfr_set_ui(term.get(), static_cast<unsigned long>(x), MPFR_RNDN);
    mpfr_log(term.get(), term.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
}

void restricted_sum_mp(const PrimeTable& table, u64 n, BigFloat& out)
{
    mpfr_set_ui(out.get(), 0, MPFR_RNDN);
    for (u64 p : table.primes_in(2, n))
        if (p % 4 != 1) add_log_ratio(out, p);
}

void bound_constant_mp(BigFloat& out)
{
    mpfr_const_log2(out.get(), MPFR_RNDN);
    mpfr_div_ui(out.get(), out.get(), 4, MPFR_RNDN);
    mpfr_add_ui(out.get(), out.get(), 4, MPFR_RNDN);
}

void require_in_table(const PrimeTable& table, u64 n, const char* what)
{
    if (n > table.limit())
        throw std::out_of_range(std::string(what) + ": n=" + std::to_string(n) + " exceeds sieve limit " +
                                std::to_string(table.limit()));
}

// sign of restricted_log_sum(n) - bound_constant() in high precision
int compare_with_constant_mp(const PrimeTable& table, u64 n)
{
    BigFloat sum, c;
    restricted_sum_mp(table, n, sum);
    bound_constant_mp(c);
    return mpfr_cmp(sum.get(), c.get());
}

}  // namespace

double restricted_log_sum(const PrimeTable& table, u64 n)
{
    require_in_table(table, n, "restricted_log_sum");
    CompensatedSum sum;
    for (u64 p : table.primes_in(2, n))
        if (p % 4 != 1) sum += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
    return sum.value();
}

double restricted_log_sum_high_precision(const PrimeTable& table, u64 n)
{
    require_in_table(table, n, "restricted_log_sum_high_precision");
    BigFloat sum;
    restricted_sum_mp(table, n, sum);
    return sum.to_double();
}

double bound_constant() { return 4.0 + std::log(2.0) / 4.0; }

ThresholdResult find_threshold(const PrimeTable& table, double guard)
{
    if (table.limit() < 4000) throw std::out_of_range("find_threshold: sieve limit must be >= 4000");
    ThresholdResult result;
    result.constant = bound_constant();

    CompensatedSum sum;
    double before = 0.0;
    for (u64 p : table.primes()) {
        if (p % 4 == 1) continue;
        before = sum.value();
        sum += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
        const double at = sum.value();
        if (at <= result.constant - guard) continue;

        bool crossed = at > result.constant;
        const bool close = std::fabs(at - result.constant) < guard || std::fabs(result.constant - before) < guard;
        if (close) {
            result.high_precision_used = true;
            crossed = compare_with_constant_mp(table, p) > 0 && compare_with_constant_mp(table, p - 1) <= 0;
        }
        if (!crossed) continue;
        result.threshold = p;
        result.sum_before = before;
        result.sum_at = at;
        return result;
    }
    throw std::out_of_range("find_threshold: no crossing below sieve limit " + std::to_string(table.limit()));
}

BoundReport conditional_inequality_report(const PrimeTable& table, u64 n, double guard)
{
    if (n < 1) throw std::invalid_argument("conditional_inequality_report: n must be >= 1");
    require_in_table(table, 2 * n, "conditional_inequality_report");

    const double nn = static_cast<double>(n);
    const double log_bound = std::log(nn * nn + 1.0);
    const double pi_n = static_cast<double>(table.pi(n));

    BoundReport report;
    report.n = n;
    report.lhs = (nn - 1.0) * restricted_log_sum(table, n);
    report.rhs_terms = {
        {"(n+1)*log(2)/4", (nn + 1.0) * std::log(2.0) / 4.0},
        {"log(n^2+1)*pi(n)", log_bound * pi_n},
        {"sum_{n<p<2n}log(p)", interval_theta_sum(table, n)},
    };
    CompensatedSum total;
    for (const auto& [name, value] : report.rhs_terms) total += value;
    report.rhs_total = total.value();
    report.verdict = report.lhs < report.rhs_total;

    if (std::fabs(report.lhs - report.rhs_total) < guard) {
        report.precision_flag = true;
        BigFloat lhs, rhs, term;
        restricted_sum_mp(table, n, lhs);
        mpfr_mul_ui(lhs.get(), lhs.get(), static_cast<unsigned long>(n - 1), MPFR_RNDN);

        mpfr_const_log2(rhs.get(), MPFR_RNDN);
        mpfr_mul_ui(rhs.get(), rhs.get(), static_cast<unsigned long>(n + 1), MPFR_RNDN);
        mpfr_div_ui(rhs.get(), rhs.get(), 4, MPFR_RNDN);

        mpfr_set_ui(term.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_sqr(term.get(), term.get(), MPFR_RNDN);
        mpfr_add_ui(term.get(), term.get(), 1, MPFR_RNDN);
        mpfr_log(term.get(), term.get(), MPFR_RNDN);
        mpfr_mul_ui(term.get(), term.get(), static_cast<unsigned long>(table.pi(n)), MPFR_RNDN);
        mpfr_add(rhs.get(), rhs.get(), term.get(), MPFR_RNDN);

        for (u64 p : table.primes_in(n + 1, 2 * n - 1)) add_log(rhs, p);
        report.verdict = mpfr_less_p(lhs.get(), rhs.get()) != 0;
    }
    return report;
}

double interval_theta_sum(const PrimeTable& table, u64 n)
{
    require_in_table(table, 2 * n, "interval_theta_sum");
    CompensatedSum sum;
    if (n < 2) return 0.0;
    for (u64 p : table.primes_in(n + 1, 2 * n - 1)) sum += std::log(static_cast<double>(p));
    return sum.value();
}

std::vector<std::pair<u64, double>> log_sum_asymptotic_report(const PrimeTable& table,
                                                              const std::vector<u64>& n_values)
{
    std::vector<std::pair<u64, double>> rows;
    rows.reserve(n_values.size());
    for (u64 n : n_values) {
        if (n < 1) throw std::invalid_argument("log_sum_asymptotic_report: n must be >= 1");
        require_in_table(table, n, "log_sum_asymptotic_report");
        CompensatedSum sum;
        for (u64 p : table.primes_in(2, n)) sum += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
        sum += -std::log(static_cast<double>(n));
        rows.emplace_back(n, sum.value());
    }
    return rows;
}

double angle_sum(u64 n)
{
    if (n < 1) throw std::invalid_argument("angle_sum: n must be >= 1");
    CompensatedSum sum;
    for (u64 k = 1; k <= n; ++k) sum += std::atan(1.0 / static_cast<double>(k));
    return sum.value();
}

}  // namespace prodsq
