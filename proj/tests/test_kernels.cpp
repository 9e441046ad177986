#include <doctest.h>

#include "moledrill/config.hpp"
#include "moledrill/drilling.hpp"
#include "moledrill/kernels/chain_kernel.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

using namespace moledrill;
using namespace moledrill::kernels;

namespace {

struct Batch {
    explicit Batch(std::size_t n) : torque(n), rpm(n), r(n), wbar(n), rop(n), energy(n), status(n) {}
    ChainOutputs view() { return {torque, rpm, r, wbar, rop, energy, status}; }
    std::vector<double> torque, rpm, r, wbar, rop, energy;
    std::vector<ChainStatus> status;
};

bool same_bits(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

void require_identical(const Batch& a, const Batch& b) {
    for (std::size_t i = 0; i < a.torque.size(); ++i) {
        REQUIRE(a.status[i] == b.status[i]);
        REQUIRE(same_bits(a.torque[i], b.torque[i]));
        REQUIRE(same_bits(a.rpm[i], b.rpm[i]));
        REQUIRE(same_bits(a.r[i], b.r[i]));
        REQUIRE(same_bits(a.wbar[i], b.wbar[i]));
        REQUIRE(same_bits(a.rop[i], b.rop[i]));
        REQUIRE(same_bits(a.energy[i], b.energy[i]));
    }
}

Config random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Config c = default_config();
    c.soil.friction = 0.1 + 1.5 * u(rng);
    c.soil.condition = u(rng) < 0.5 ? FormationCondition::Soft : FormationCondition::Hard;
    c.motor.stall_torque_nm = 2 + 20 * u(rng);
    c.motor.no_load_rpm = 50 + 400 * u(rng);
    c.motor.efficiency = 0.3 + 0.7 * u(rng);
    c.bit.expanded_diameter_m = c.bit.folded_diameter_m + 0.01 + 0.3 * u(rng);
    c.bit.area_convention = u(rng) < 0.5 ? AreaConvention::FullCircle : AreaConvention::Annulus;
    c.galle.diameter_unit = static_cast<LengthUnit>(static_cast<int>(u(rng) * 3) % 3);
    c.galle.calibration_scale = 0.05 + 2 * u(rng);
    c.galle.weight_exponent = 0.5 + u(rng);
    return c;
}

}  // namespace

TEST_CASE("scalar reference matches solve_operating_point exactly") {
    const Config c = default_config();
    std::vector<double> wob;
    for (int i = 0; i <= 300; ++i) wob.push_back(1.0 + 0.83 * i);
    Batch out(wob.size());
    evaluate_chain_scalar(wob, make_chain_params(c.soil, c.motor, c.bit, c.galle), out.view());
    for (std::size_t i = 0; i < wob.size(); ++i) {
        if (wob[i] > stall_wob(c.soil, c.motor, c.bit)) {
            REQUIRE(out.status[i] == ChainStatus::Stall);
            continue;
        }
        const OperatingPoint p = solve_operating_point(wob[i], c.soil, c.motor, c.bit, c.galle);
        REQUIRE(out.status[i] == ChainStatus::Ok);
        REQUIRE(same_bits(out.torque[i], p.torque_nm));
        REQUIRE(same_bits(out.rpm[i], p.rpm));
        REQUIRE(same_bits(out.r[i], p.r_value));
        REQUIRE(same_bits(out.wbar[i], p.wbar));
        REQUIRE(same_bits(out.rop[i], p.rop_m_hr));
        REQUIRE(same_bits(out.energy[i], p.specific_energy_pa));
    }
}

TEST_CASE("zero load and stall lanes are flagged") {
    const Config c = default_config();
    const std::vector<double> wob{0.0, 50.0, 500.0, 100.0, 0.0};
    for (KernelPath path : {KernelPath::Scalar, KernelPath::Avx2}) {
        Batch out(wob.size());
        evaluate_chain(wob, make_chain_params(c.soil, c.motor, c.bit, c.galle), out.view(), path);
        CHECK(out.status[0] == ChainStatus::ZeroRate);
        CHECK(out.status[1] == ChainStatus::Ok);
        CHECK(out.status[2] == ChainStatus::Stall);
        CHECK(std::isnan(out.rop[2]));
        CHECK(out.status[3] == ChainStatus::Ok);
        CHECK(out.status[4] == ChainStatus::ZeroRate);
    }
}

TEST_CASE("AVX2 kernel is bit-identical to the scalar reference") {
    if (!avx2_available()) {
        MESSAGE("AVX2 kernel not available on this host; dispatch falls back to scalar");
        CHECK(active_path() == KernelPath::Scalar);
        return;
    }
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> w(0.0, 400.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Config c = random_config(rng);
        const std::size_t n = 1 + static_cast<std::size_t>(trial * 7 % 131);  // exercises every tail length
        std::vector<double> wob(n);
        for (auto& x : wob) x = w(rng);
        if (trial % 5 == 0) wob[0] = 0.0;
        if (trial % 7 == 0) wob[n - 1] = stall_wob(c.soil, c.motor, c.bit);  // exact stall edge: rpm 0 or tiny
        const ChainParams params = make_chain_params(c.soil, c.motor, c.bit, c.galle);
        Batch scalar(n), simd(n);
        evaluate_chain_scalar(wob, params, scalar.view());
        evaluate_chain_avx2(wob, params, simd.view());
        require_identical(scalar, simd);
    }
}

TEST_CASE("dispatch honors MOLEDRILL_SIMD=scalar") {
    setenv("MOLEDRILL_SIMD", "scalar", 1);
    CHECK(active_path() == KernelPath::Scalar);
    unsetenv("MOLEDRILL_SIMD");
    CHECK(active_path() == (avx2_available() ? KernelPath::Avx2 : KernelPath::Scalar));
}

TEST_CASE("short output spans are rejected") {
    const Config c = default_config();
    std::vector<double> wob(8, 50.0);
    Batch out(4);
    CHECK_THROWS(evaluate_chain(wob, make_chain_params(c.soil, c.motor, c.bit, c.galle), out.view()));
}
