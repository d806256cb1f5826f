#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

namespace tiledag {

enum class KernelKind : std::uint8_t {
    POTRF,
    TRSM,
    SYRK,
    GEMM,
    TRTRI,
    TRMM,
    LAUUM,
    GEQRT,
    TSQRT,
    TTQRT,
    UNMQR,
    TSMQR,
    TTMQR,
    GEADD,
    COPY,
    BARRIER,
};

inline constexpr std::size_t kNumKernelKinds = 16;

std::string_view kernel_name(KernelKind k);
std::optional<KernelKind> parse_kernel(std::string_view name);

// Duration assignment for kernel kinds. One unit is n_b^3/3 flops for the
// Cholesky and QR models and abstract otherwise.
class WeightModel {
public:
    enum class Mode { Unit, Cholesky, QrTT, QrFull, Custom };

    static WeightModel unit() { return WeightModel(Mode::Unit); }
    static WeightModel cholesky() { return WeightModel(Mode::Cholesky); }
    static WeightModel qr_tt() { return WeightModel(Mode::QrTT); }
    static WeightModel qr_full() { return WeightModel(Mode::QrFull); }
    // Kinds missing from the map weigh 0. BARRIER always weighs 0.
    static WeightModel custom(const std::map<KernelKind, std::int64_t>& w);

    Mode mode() const { return mode_; }
    std::int64_t operator()(KernelKind k) const { return table_[static_cast<std::size_t>(k)]; }

private:
    explicit WeightModel(Mode m);
    Mode mode_;
    std::array<std::int64_t, kNumKernelKinds> table_{};
};

}  // namespace tiledag
