#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "selfforce/batch.hpp"
#include "selfforce/kernels.hpp"

using namespace selfforce;

namespace {

bool bit_equal(double a, double b) {
  std::uint64_t ua, ub;
  std::memcpy(&ua, &a, sizeof a);
  std::memcpy(&ub, &b, sizeof b);
  return ua == ub;
}

std::vector<double> random_args(std::size_t n, double lo, double hi,
                                unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (auto& x : out) x = dist(rng);
  // pin the interesting edges
  if (n >= 4) {
    out[0] = 0.25;
    out[1] = 2.0;
    out[2] = std::nextafter(2.0, 0.0);
    out[3] = std::nextafter(2.0, 3.0);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar backend matches the plain kernels bit for bit") {
  const auto args = random_args(1000, 1e-3, 6.0, 2024);
  std::vector<double> out(args.size());
  const auto& ops = batch::ops(batch::Backend::scalar);

  ops.self_force_kernel(args.data(), out.data(), args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    CHECK(bit_equal(out[i], kernels::self_force_kernel(args[i])));

  ops.displacement_force_kernel(args.data(), out.data(), args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    CHECK(bit_equal(out[i], kernels::displacement_force_kernel(args[i])));

  ops.geometric_factor(args.data(), out.data(), args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    CHECK(bit_equal(out[i], kernels::geometric_factor(args[i])));

  ops.radiation_reaction_force_br(args.data(), out.data(), args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    CHECK(bit_equal(out[i], kernels::radiation_reaction_force_br(args[i])));
}

TEST_CASE("every available backend agrees with scalar bit for bit") {
  // sizes exercise the vector body plus every remainder length
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                        std::size_t{4}, std::size_t{5}, std::size_t{7},
                        std::size_t{8}, std::size_t{1003}}) {
    const auto args = random_args(n, 1e-3, 6.0, 7u + static_cast<unsigned>(n));
    std::vector<double> ref(n), out(n);
    const auto& scalar = batch::ops(batch::Backend::scalar);

    for (batch::Backend backend : {batch::Backend::scalar,
                                   batch::Backend::avx2}) {
      if (!batch::available(backend)) continue;
      const auto& ops = batch::ops(backend);

      scalar.self_force_kernel(args.data(), ref.data(), n);
      ops.self_force_kernel(args.data(), out.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(bit_equal(out[i], ref[i]));

      scalar.displacement_force_kernel(args.data(), ref.data(), n);
      ops.displacement_force_kernel(args.data(), out.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(bit_equal(out[i], ref[i]));

      scalar.geometric_factor(args.data(), ref.data(), n);
      ops.geometric_factor(args.data(), out.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(bit_equal(out[i], ref[i]));

      scalar.radiation_reaction_force_br(args.data(), out.data(), n);
      ops.radiation_reaction_force_br(args.data(), ref.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(bit_equal(out[i], ref[i]));
    }
  }
}

TEST_CASE("active backend reports a usable name") {
  const auto name = batch::name(batch::active());
  CHECK((name == "scalar" || name == "avx2"));
  INFO("active backend: ", name);

  // the active dispatch produces the scalar answers
  std::vector<double> args{0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  std::vector<double> out(args.size());
  batch::self_force_kernel(args, out);
  for (std::size_t i = 0; i < args.size(); ++i)
    CHECK(bit_equal(out[i], kernels::self_force_kernel(args[i])));
}

TEST_CASE("span wrappers validate sizes") {
  std::vector<double> args{1.0, 2.0};
  std::vector<double> out(3);
  CHECK_THROWS_AS(batch::self_force_kernel(args, out), std::invalid_argument);
}

TEST_CASE("requesting an unavailable backend throws") {
  if (!batch::available(batch::Backend::avx2))
    CHECK_THROWS_AS(batch::ops(batch::Backend::avx2), std::invalid_argument);
  else
    CHECK_NOTHROW(batch::ops(batch::Backend::avx2));
}
