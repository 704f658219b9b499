// Literal empirical claims evaluated as stated. Their analysis is in the
// README; they are registered as a separate ctest entry.
#include "spacing/montecarlo.hpp"
#include "spacing/painleve.hpp"
#include "spacing/sequences.hpp"
#include "spacing/stats.hpp"
#include "spacing/surmise.hpp"

#include <doctest.h>


using namespace spacing;

TEST_SUITE("empirical") {

TEST_CASE("2000 pooled central spacings against the beta = 1 surmise at seed 42") {
    const auto e = ensemble_spacings(13, 2000, 42, 0, 0);
    const auto fit = chi_square_gof(build_histogram(e.spacings, 0.1, Interval(0.0, 4.0)),
                                    [](double s) { return wigner_surmise(1, s); });
    MESSAGE("chi-square p = " << fit.p_value);
    CHECK(fit.p_value > 0.01);
}

TEST_CASE("unscaled central spacings converge to p1(0; s) as the sample grows") {
    const auto e = ensemble_spacings(13, 100000, 42, 0, 0);
    const auto fit = chi_square_gof(build_histogram(e.spacings, 0.1, Interval(0.0, 4.0)),
                                    [](double s) { return p1_direct(s); });
    MESSAGE("chi-square p with 10^5 matrices = " << fit.p_value);
    CHECK(fit.p_value > 0.01);
}

TEST_CASE("first 2000 zeta zeros against the nearest-neighbour law") {
    const auto d = load_zeros(SPACING_TEST_DATA "/zeta_zeros_2000.txt");
    const auto nn = nn_statistic(unfold_zeros(d));
    const auto fit = chi_square_gof(build_histogram(nn, 0.1, Interval(0.0, 3.0)), [](double s) { return p2_nn(s); });
    MESSAGE("chi-square p = " << fit.p_value);
    CHECK(fit.p_value > 0.01);
}

}
