#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wpstat/volumes.hpp"

#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <thread>

using namespace wpstat;

namespace {
ScopedPrecision g_prec(60);

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("save/load round-trip is exactly equal") {
    auto path = temp_file("wpstat_cache_roundtrip.txt");
    VolumeTable a(12);
    a.polynomial(2, 2);
    a.polynomial(1, 3);
    a.polynomial(3, 0);
    REQUIRE(a.save_cache(path));

    VolumeTable b(12);
    auto warning = b.load_cache(path);
    CHECK(!warning.has_value());
    for (auto key : a.cached_keys()) {
        const VolumePoly& pa = a.polynomial(key.first, key.second);
        const VolumePoly& pb = b.polynomial(key.first, key.second);
        CHECK(pa.coeffs() == pb.coeffs());
    }
    std::filesystem::remove(path);
}

TEST_CASE("loaded entries equal recomputation") {
    auto path = temp_file("wpstat_cache_recompute.txt");
    {
        VolumeTable a(12);
        a.polynomial(2, 1);
        REQUIRE(a.save_cache(path));
    }
    VolumeTable fresh(12);
    REQUIRE(!fresh.load_cache(path).has_value());
    VolumeTable recomputed(12);
    CHECK(fresh.polynomial(2, 1).coeffs() == recomputed.polynomial(2, 1).coeffs());
    std::filesystem::remove(path);
}

TEST_CASE("corrupt cache is discarded with a warning") {
    auto path = temp_file("wpstat_cache_corrupt.txt");
    {
        VolumeTable a(12);
        a.polynomial(1, 2);
        REQUIRE(a.save_cache(path));
    }
    SUBCASE("garbage line") {
        std::ofstream app(path, std::ios::app);
        app << "1 2 0 zz | broken\n";
        app.close();
        VolumeTable b(12);
        auto warning = b.load_cache(path);
        CHECK(warning.has_value());
        CHECK(b.cached_keys().empty());
    }
    SUBCASE("header mismatch") {
        std::ofstream out(path);
        out << "# some-other-tool v9\n1 1 0 | 1/6*pi^2\n";
        out.close();
        VolumeTable b(12);
        CHECK(b.load_cache(path).has_value());
        CHECK(b.cached_keys().empty());
    }
    SUBCASE("invariant violation (tampered coefficient sign)") {
        std::ofstream out(path);
        out << "# wpstat-volume-cache v1 K=12\n1 1 0 | -1/6*pi^2\n1 1 1 | 1/24*pi^0\n";
        out.close();
        VolumeTable b(12);
        CHECK(b.load_cache(path).has_value());
        CHECK(b.cached_keys().empty());
    }
    std::filesystem::remove(path);
}

TEST_CASE("missing file reports unreadable") {
    VolumeTable b(12);
    CHECK(b.load_cache(temp_file("wpstat_cache_does_not_exist.txt")).has_value());
}

TEST_CASE("concurrent readers and writers agree") {
    VolumeTable t(12);
    std::vector<std::thread> workers;
    std::atomic<bool> ok{true};
    for (int w = 0; w < 6; ++w) {
        workers.emplace_back([&t, &ok] {
            try {
                ScopedPrecision guard(60);
                for (auto [g, n] :
                     {std::pair{1, 2}, {2, 1}, {0, 5}, {1, 3}, {2, 2}, {3, 0}, {1, 2}, {2, 1}}) {
                    const VolumePoly& p = t.polynomial(g, n);
                    if (!p.check_degree_bound() || !p.check_pi_power_pattern()) ok = false;
                }
            } catch (...) {
                ok = false;
            }
        });
    }
    for (auto& w : workers) w.join();
    CHECK(ok.load());
    VolumeTable reference(12);
    CHECK(t.polynomial(2, 2).coeffs() == reference.polynomial(2, 2).coeffs());
}
