#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gdist/kernels.hpp"

using namespace gdist::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n) {
    std::normal_distribution<double> dist(0.0, 3.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(gen);
    return v;
}

bool close(double a, double b, double scale) {
    return std::abs(a - b) <= 1e-12 * (1.0 + scale);
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar table is always available and listed first") {
    auto tables = available_tables();
    REQUIRE(!tables.empty());
    CHECK(tables.front()->isa == Isa::Scalar);
    CHECK(&scalar_table() == tables.front());
}

TEST_CASE("every variant matches the scalar reference") {
    const auto& ref = scalar_table();
    std::mt19937_64 gen(42);
    for (const KernelTable* t : available_tables()) {
        CAPTURE(t->name);
        for (std::size_t n = 0; n <= 67; ++n) {
            CAPTURE(n);
            auto a = random_vector(gen, n);
            auto b = random_vector(gen, n);
            double mag = 0.0;
            for (std::size_t k = 0; k < n; ++k) mag += a[k] * a[k] + b[k] * b[k];

            CHECK(close(t->sum_squared_diff(a.data(), b.data(), n),
                        ref.sum_squared_diff(a.data(), b.data(), n), mag));
            CHECK(close(t->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), mag));

            std::vector<std::uint8_t> bytes(n * 3 + 1);
            for (auto& v : bytes) v = static_cast<std::uint8_t>(gen() & 1u);
            CHECK(t->count_nonzero_u8(bytes.data(), bytes.size()) ==
                  ref.count_nonzero_u8(bytes.data(), bytes.size()));

            auto x1 = a, y1 = b, x2 = a, y2 = b;
            const double c = std::cos(0.7), s = std::sin(0.7);
            t->rotate(x1.data(), y1.data(), n, c, s);
            ref.rotate(x2.data(), y2.data(), n, c, s);
            for (std::size_t k = 0; k < n; ++k) {
                CHECK(close(x1[k], x2[k], std::abs(a[k]) + std::abs(b[k])));
                CHECK(close(y1[k], y2[k], std::abs(a[k]) + std::abs(b[k])));
            }

            auto z1 = b, z2 = b;
            t->axpy(-1.25, a.data(), z1.data(), n);
            ref.axpy(-1.25, a.data(), z2.data(), n);
            for (std::size_t k = 0; k < n; ++k)
                CHECK(close(z1[k], z2[k], std::abs(a[k]) + std::abs(b[k])));
        }
    }
}

TEST_CASE("scalar reference values") {
    const auto& ref = scalar_table();
    std::vector<double> a{1, 2, 3}, b{4, 6, 3};
    CHECK(ref.sum_squared_diff(a.data(), b.data(), 3) == 25.0);
    CHECK(ref.dot(a.data(), b.data(), 3) == 25.0);
    std::vector<std::uint8_t> bytes{0, 1, 1, 0, 1};
    CHECK(ref.count_nonzero_u8(bytes.data(), bytes.size()) == 3);
}

TEST_CASE("select switches the active table") {
    const Isa before = active().isa;
    select(Isa::Scalar);
    CHECK(active().isa == Isa::Scalar);
    if (avx2_table() != nullptr) {
        select(Isa::Avx2);
        CHECK(active().isa == Isa::Avx2);
    }
    select(before);
    CHECK(isa_name(Isa::Scalar) == "scalar");
}

}
