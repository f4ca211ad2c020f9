#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ripple/grid.hpp"

namespace ripple {

inline constexpr std::uint32_t kFieldFormatVersion = 1;

// Optional provenance stored next to a field file as <path>.json.
struct FieldMeta {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> index;
    std::string ensemble;
    double ell = 0.0;
    double t = 0.0;
};

void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

void write_sidecar(const std::string& field_path, const FieldMeta& meta);
std::optional<FieldMeta> read_sidecar(const std::string& field_path);

}  // namespace ripple
