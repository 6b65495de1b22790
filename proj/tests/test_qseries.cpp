#include "bmlab/qseries.hpp"

#include "bmlab/modular.hpp"
#include "test_util.hpp"

using namespace bmlab;
using namespace bmlab::modular;
using bmlab::testing::close;

static const PrecisionContext ctx;

TEST_CASE("eta expansion: pentagonal pattern") {
    QSeries e = eta_qseries(40);
    CHECK(e.lead24 == 1);
    CHECK(e.coeff24(1) == 1);  // q^(1/24)
    // direct product oracle: multiply out prod_{n<=40} (1 - q^n)
    std::vector<mpq_class> p(41, mpq_class(0));
    p[0] = 1;
    for (int n = 1; n <= 40; ++n)
        for (int j = 40; j >= n; --j) p[j] -= p[j - n];
    for (int k = 1; k <= 40; ++k) CHECK(e.coeff24(1 + 24 * k) == p[k]);
    CHECK(e.coeff24(1 + 24) == -1);
    CHECK(e.coeff24(1 + 24 * 2) == -1);
    CHECK(e.coeff24(1 + 24 * 5) == 1);
    CHECK(e.coeff24(1 + 24 * 7) == 1);
}

TEST_CASE("eta^24 matches the discriminant expansion") {
    QSeries d = eta_qseries(24).pow(24);
    CHECK(d.lead24 == 24);
    CHECK(d.a(1) == 1);
    CHECK(d.a(2) == -24);
    CHECK(d.a(3) == 252);
    CHECK(d.a(4) == -1472);
}

TEST_CASE("truncation too small") {
    CHECK_THROWS(eta_quotient_qseries({{1, 2}}, 0));
}

TEST_CASE("f46 coefficients and Hecke multiplicativity") {
    const QSeries& f = form_qseries(NamedForm::F46, 64);
    CHECK(f.lead24 == 24);
    long expect[] = {1, -2, -3, 4, 6, 6, -16};
    for (int n = 1; n <= 7; ++n) CHECK(f.a(n) == expect[n - 1]);
    CHECK(f.a(6) == f.a(2) * f.a(3));
    CHECK(f.a(12) == f.a(4) * f.a(3));
}

TEST_CASE("f66: the two recipes agree exactly on 200 coefficients") {
    const ModularFormSpec& spec = form_spec(NamedForm::F66);
    QSeries a = quotient_qseries(spec.recipe, 210);
    QSeries b = quotient_qseries(spec.companion, 210);
    CHECK(a.lead24 == b.lead24);
    bool all_equal = true;
    for (long n = 1; n <= 200; ++n)
        if (a.a(n) != b.a(n)) all_equal = false;
    CHECK(all_equal);
    CHECK(a.a(1) == 1);
    CHECK(a.a(2) == 4);
    CHECK(a.a(3) == -9);
}

TEST_CASE("weight-4 kernel equals Z63 * q dX63/dq") {
    QSeries g = quotient_qseries(form_spec(NamedForm::EichlerKernel46).recipe, 80);
    QSeries z = quotient_qseries(form_spec(NamedForm::Z63).recipe, 80);
    QSeries x = quotient_qseries(form_spec(NamedForm::X63).recipe, 80);
    QSeries rhs = z * x.qdq();
    for (long n = 1; n <= 70; ++n) CHECK(g.a(n) == rhs.a(n));
}

TEST_CASE("negative powers and arithmetic") {
    QSeries e2 = eta_qseries_factor(2, 30);
    QSeries inv = e2.inverse();
    QSeries one = e2 * inv;
    CHECK(one.lead24 == 0);
    CHECK(one.coeff24(0) == 1);
    for (long j = 1; j < 20; ++j) CHECK(one.coeff24(48 * j) == 0);
    // truncation order propagates as the minimum of the operands
    QSeries a = eta_qseries(10);
    QSeries b = eta_qseries(30);
    QSeries p = a * b;
    CHECK(p.valid24 <= a.valid24 + b.lead24);
}

TEST_CASE("theta expansion") {
    QSeries t = theta_qseries(30);
    CHECK(t.coeff24(0) == 1);
    CHECK(t.coeff24(12) == 2);   // q^(1/2)
    CHECK(t.coeff24(48) == 2);   // q^2
    CHECK(t.coeff24(108) == 2);  // q^(9/2)
    CHECK(t.coeff24(24) == 0);
}

TEST_CASE("csv export") {
    QSeries e = eta_qseries(4);
    std::string csv = e.to_csv();
    CHECK(csv.find("n,numerator,denominator") == 0);
    CHECK(csv.find("1/24,1,1") != std::string::npos);
    CHECK(csv.find("25/24,-1,1") != std::string::npos);
}

TEST_CASE("numeric evaluation of a q-series matches eta_point") {
    long prec = ctx.work_bits();
    Complex z{Real("0.31", prec), Real("0.83", prec)};
    QSeries e = eta_qseries(truncation_order(0.83, ctx));
    Complex via_series = e.eval(z, prec);
    Complex via_point = eta_point(z, ctx);
    CHECK(close(via_series, via_point, ctx.digits));
}
