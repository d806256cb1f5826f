#include "tiledag/kernel.hpp"

#include "tiledag/error.hpp"

namespace tiledag {

namespace {

constexpr std::array<std::string_view, kNumKernelKinds> kNames = {
    "POTRF", "TRSM",  "SYRK",  "GEMM",  "TRTRI", "TRMM",  "LAUUM", "GEQRT",
    "TSQRT", "TTQRT", "UNMQR", "TSMQR", "TTMQR", "GEADD", "COPY",  "BARRIER",
};

constexpr std::size_t idx(KernelKind k) { return static_cast<std::size_t>(k); }

}  // namespace

std::string_view kernel_name(KernelKind k) { return kNames[idx(k)]; }

std::optional<KernelKind> parse_kernel(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return static_cast<KernelKind>(i);
    return std::nullopt;
}

WeightModel::WeightModel(Mode m) : mode_(m) {
    switch (m) {
        case Mode::Unit:
            table_.fill(1);
            // COPY tasks are bookkeeping for array renaming and never appear in
            // critical-path counts.
            table_[idx(KernelKind::COPY)] = 0;
            break;
        case Mode::Cholesky:
            table_[idx(KernelKind::POTRF)] = 1;
            table_[idx(KernelKind::TRSM)] = 3;
            table_[idx(KernelKind::SYRK)] = 3;
            table_[idx(KernelKind::GEMM)] = 6;
            break;
        case Mode::QrTT:
        case Mode::QrFull:
            table_[idx(KernelKind::GEQRT)] = 4;
            table_[idx(KernelKind::TTQRT)] = 2;
            table_[idx(KernelKind::UNMQR)] = 6;
            table_[idx(KernelKind::TTMQR)] = 6;
            table_[idx(KernelKind::TSQRT)] = 6;
            table_[idx(KernelKind::TSMQR)] = 12;
            break;
        case Mode::Custom:
            break;
    }
    table_[idx(KernelKind::BARRIER)] = 0;
}

WeightModel WeightModel::custom(const std::map<KernelKind, std::int64_t>& w) {
    WeightModel m(Mode::Custom);
    for (const auto& [k, v] : w) {
        require(v >= 0, "kernel weights must be nonnegative");
        m.table_[idx(k)] = v;
    }
    m.table_[idx(KernelKind::BARRIER)] = 0;
    return m;
}

}  // namespace tiledag
