#include <doctest.h>

#include <cmath>

#include "temple/temple_core.hpp"
#include "test_support.hpp"

using namespace temple;

namespace {

const Velocity& burgers() {
  static const Velocity v = testing::burgers_on(1.0, 2.0).velocity();
  return v;
}

// Midpoint quadrature of eta(xi) over [a, b].
double integrate_wave(double v, double eta_l, double eta_r, double a, double b, const Velocity& vel, int n = 200000) {
  const auto pieces = wave2_pieces(v, eta_l, eta_r, vel);
  double acc = 0.0;
  const double d = (b - a) / n;
  for (int i = 0; i < n; ++i) acc += sample_pieces(pieces, eta_l, eta_r, a + (i + 0.5) * d, vel, v);
  return acc * d;
}

}  // namespace

TEST_CASE("riemann invariants") {
  auto pq = riemann_invariants({1.0, 2.0});
  CHECK(pq.p == 2.0);
  CHECK(pq.q == 2.0);
  pq = riemann_invariants({0.5, 1.0});
  CHECK(pq.p == 2.0);
  CHECK(pq.q == 1.0);
  pq = riemann_invariants({2.0, 2.0});
  CHECK(pq.p == 1.0);
  CHECK(pq.q == 2.0);
}

TEST_CASE("lambda2 matches the eigenvalue of the flux Jacobian") {
  const Velocity& vel = burgers();
  CHECK(lambda2({1.0, 2.0}, vel.G_prime) == doctest::Approx(1.0));
  CHECK(lambda2({0.5, 1.0}, vel.G_prime) == doctest::Approx(2.0));

  // DP = [[dP1/deta, dP1/dv], [0, 0]], eigenvalues dP1/deta and 0.
  const Velocity bl = testing::buckley_leverett().velocity();
  for (State w : {State{1.0, 2.0}, State{0.5, 1.0}, State{0.8, 1.3}}) {
    const double d = 1e-6;
    auto P1 = [&](double eta, double v) { return -bl.G(v / eta); };
    const double dP1deta = (P1(w.eta + d, w.v) - P1(w.eta - d, w.v)) / (2 * d);
    CHECK(lambda2(w, bl.G_prime) == doctest::Approx(dP1deta).epsilon(1e-7));
  }
}

TEST_CASE("middle state") {
  CHECK(middle_state({1.0, 2.0}, {1.0, 1.0}) == State{0.5, 1.0});
  CHECK(middle_state({1.3, 1.7}, {1.3, 1.7}) == State{1.3, 1.7});
  CHECK(middle_state({2.0, 2.0}, {1.0, 3.0}) == State{3.0, 3.0});

  auto gen = testing::rng();
  std::uniform_real_distribution<double> u(1.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const State l{u(gen) / u(gen), u(gen)};
    const State r{u(gen) / u(gen), u(gen)};
    const State m = middle_state(l, r);
    CHECK(m.q() == r.q());
    CHECK(std::abs(m.p() - l.p()) <= 4 * std::numeric_limits<double>::epsilon() * l.p());
    // Flux continuity across the contact.
    CHECK(std::abs(burgers().G(m.p()) - burgers().G(l.p())) <= 4e-16 * l.p());
  }
}

TEST_CASE("wave2 sampler, burgers velocity") {
  const Velocity& vel = burgers();
  SUBCASE("shock at speed 1") {
    CHECK(wave2_sampler(1.0, 0.5, 1.0, 0.9, vel) == 0.5);
    CHECK(wave2_sampler(1.0, 0.5, 1.0, 1.1, vel) == 1.0);
    const auto pieces = wave2_pieces(1.0, 0.5, 1.0, vel);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].kind == WavePiece::Kind::shock);
    CHECK(pieces[0].speed_lo == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("rarefaction between lambda2(1,1)=1/2 and lambda2(0.5,1)=2") {
    CHECK(wave2_sampler(1.0, 1.0, 0.5, 0.4, vel) == 1.0);
    CHECK(wave2_sampler(1.0, 1.0, 0.5, 2.5, vel) == 0.5);
    const double mid = wave2_sampler(1.0, 1.0, 0.5, 1.0, vel);
    CHECK(mid == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));  // 1/(2 eta^2) = 1
    const auto pieces = wave2_pieces(1.0, 1.0, 0.5, vel);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].kind == WavePiece::Kind::fan);
    CHECK(pieces[0].speed_lo == doctest::Approx(0.5));
    CHECK(pieces[0].speed_hi == doctest::Approx(2.0));
  }
  SUBCASE("constant") {
    for (double xi : {0.1, 1.0, 7.0}) CHECK(wave2_sampler(1.0, 1.0, 1.0, xi, vel) == 1.0);
  }
}

TEST_CASE("solve_riemann") {
  const Velocity& vel = burgers();
  const State l{1.0, 2.0};
  const State r{1.0, 1.0};
  CHECK(solve_riemann(l, r, -0.1, vel) == l);
  CHECK(solve_riemann(l, r, 0.5, vel) == State{0.5, 1.0});
  CHECK(solve_riemann(l, r, 1.5, vel) == r);
  CHECK(solve_riemann(l, r, 0.0, vel) == middle_state(l, r));
  for (double xi : {-1.0, 0.0, 0.3, 5.0}) CHECK(solve_riemann(l, l, xi, vel) == l);

  // Self-similarity: equal ratios x/t give equal states.
  for (auto [x, t] : {std::pair{0.3, 0.5}, std::pair{0.6, 1.0}, std::pair{1.2, 2.0}}) {
    CHECK(solve_riemann({1.0, 1.0}, {1.0, 2.0}, x / t, vel) == solve_riemann({1.0, 1.0}, {1.0, 2.0}, 0.6, vel));
  }
}

TEST_CASE("godunov flux is the upwind flux") {
  const Velocity& vel = burgers();
  auto f = godunov_flux({1.0, 2.0}, {1.0, 1.0}, vel.G);
  CHECK(f[0] == doctest::Approx(-1.0));
  CHECK(f[1] == 0.0);
  f = godunov_flux({1.0, 1.0}, {1.0, 1.0}, vel.G);
  CHECK(f[0] == doctest::Approx(-0.5));
  CHECK(godunov_flux({1.0, 2.0}, {1.0, 1.0}, vel.G) == godunov_flux({1.0, 2.0}, {2.0, 3.0}, vel.G));
}

TEST_CASE("pq norm and region") {
  CHECK(pq_norm({1.0, 2.0}, {1.0, 1.0}) == 2.0);
  CHECK(pq_norm({1.3, 1.1}, {1.3, 1.1}) == 0.0);
  CHECK(pq_norm({0.5, 1.0}, {1.0, 1.0}) == 1.0);

  const RegionQ Q{1.0, 2.0};
  CHECK(region_contains(Q, {0.5, 1.0}, 0.0));  // vertex (m/M, m)
  CHECK(region_contains(Q, {1.0, 1.0}, 0.0));
  CHECK(region_contains(Q, {2.0, 2.0}, 0.0));  // vertex (M/m, M)
  CHECK(region_contains(Q, {1.0, 2.0}, 0.0));
  CHECK(region_contains(Q, {1.0, 1.5}, 0.0));
  CHECK_FALSE(region_contains(Q, {1.0, 3.0}, 0.0));
  CHECK_FALSE(region_contains(Q, {0.4, 1.0}, 1e-12));
  CHECK(Q.violation({1.0, 3.0}) == doctest::Approx(1.0));
}

TEST_CASE("2-wave conserves eta and has positive speeds") {
  // For eta_t + phi(eta)_x = 0 and a < all speeds < b:
  //   int_a^b eta(xi) dxi = b eta_R - a eta_L - (phi(eta_R) - phi(eta_L)).
  auto check_wave = [](const Velocity& vel, double v, double el, double er) {
    const auto pieces = wave2_pieces(v, el, er, vel);
    REQUIRE_FALSE(pieces.empty());
    const double a = 0.5 * pieces.front().speed_lo;
    const double b = 1.5 * pieces.back().speed_hi + 0.1;
    auto phi = [&](double eta) { return -vel.G(v / eta); };
    const double expected = b * er - a * el - (phi(er) - phi(el));
    // Midpoint error across a jump is at most (b - a) / n times the jump.
    CHECK(std::abs(integrate_wave(v, el, er, a, b, vel) - expected) <= 2.0 * (b - a) / 200000 * std::abs(er - el) + 1e-9);

    const RegionQ Q{std::min(v, 1.0), std::max(v, 2.0)};
    double min_l2 = 1e300;
    for (int i = 0; i <= 256; ++i) {
      const double eta = std::min(el, er) + std::abs(er - el) * i / 256;
      min_l2 = std::min(min_l2, lambda2({eta, v}, vel.G_prime));
    }
    for (const WavePiece& pc : pieces) {
      CHECK(pc.speed_lo > 0.0);
      CHECK(pc.speed_lo >= min_l2 - 1e-12);
      if (pc.kind == WavePiece::Kind::shock) {
        CHECK(std::abs(pc.speed_lo * (pc.eta_to - pc.eta_from) - (phi(pc.eta_to) - phi(pc.eta_from))) <= 1e-8);
      }
    }
    // Monotone profile between the end states.
    double prev = el;
    for (int i = 0; i <= 400; ++i) {
      const double e = sample_pieces(pieces, el, er, b * i / 400, vel, v);
      CHECK((er - el) * (e - prev) >= -1e-14);
      prev = e;
    }
  };
  check_wave(burgers(), 1.0, 0.5, 1.0);
  check_wave(burgers(), 1.0, 1.0, 0.5);
  check_wave(burgers(), 1.7, 1.7 / 1.2, 1.7 / 1.9);

  const Velocity bl = testing::buckley_leverett().velocity();
  check_wave(bl, 1.5, 1.5 / 1.9, 1.5 / 1.1);
  check_wave(bl, 1.5, 1.5 / 1.1, 1.5 / 1.9);
  check_wave(bl, 1.1, 1.1 / 1.9, 1.0);
}

TEST_CASE("buckley-leverett 2-wave contains a composite wave") {
  // g has an inflection point, so some frozen-v problem must mix shock and fan.
  const Velocity bl = testing::buckley_leverett().velocity();
  bool found = false;
  for (double p_lo = 1.05; p_lo < 1.9 && !found; p_lo += 0.05) {
    for (int dir = 0; dir < 2 && !found; ++dir) {
      const double v = 1.5;
      const double el = dir ? v / p_lo : v / 1.95;
      const double er = dir ? v / 1.95 : v / p_lo;
      WaveStructure ws;
      ws.wave2 = wave2_pieces(v, el, er, bl);
      if (ws.kind() != Wave2Kind::composite) continue;
      found = true;
      auto phi = [&](double eta) { return -bl.G(v / eta); };
      auto dphi = [&](double eta) { return bl.G_prime(v / eta) * v / (eta * eta); };
      // Breakpoints between a shock and a fan are tangency points: the shock speed
      // equals the characteristic speed there.
      for (std::size_t i = 0; i + 1 < ws.wave2.size(); ++i) {
        const WavePiece& a = ws.wave2[i];
        const WavePiece& b = ws.wave2[i + 1];
        CHECK(a.eta_to == doctest::Approx(b.eta_from).epsilon(1e-12));
        if (a.kind != b.kind) {
          CHECK(a.speed_hi == doctest::Approx(b.speed_lo).epsilon(1e-6));
          CHECK(dphi(a.eta_to) == doctest::Approx(a.speed_hi).epsilon(1e-6));
        }
      }
      (void)phi;
    }
  }
  CHECK(found);
}

TEST_CASE("riemann_structure assembles contact and 2-wave") {
  const WaveStructure ws = riemann_structure({1.0, 2.0}, {1.0, 1.0}, burgers());
  CHECK(ws.middle == State{0.5, 1.0});
  CHECK(ws.kind() == Wave2Kind::shock);
  CHECK(riemann_structure({1.0, 1.0}, {1.0, 1.0}, burgers()).kind() == Wave2Kind::none);
  CHECK(riemann_structure({1.0, 1.0}, {1.0, 2.0}, burgers()).kind() == Wave2Kind::rarefaction);
}
