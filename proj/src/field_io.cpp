#include "ripple/field_io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "ripple/spectral.hpp"

namespace ripple {

static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");

namespace {
constexpr char kMagic[4] = {'R', 'I', 'P', 'L'};

void put_u32(std::ofstream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

std::uint32_t get_u32(std::ifstream& is, const std::string& path) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), 4)) throw Error(path + ": truncated header");
    return v;
}
}  // namespace

void write_field(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(path + ": cannot open for writing");
    os.write(kMagic, 4);
    put_u32(os, kFieldFormatVersion);
    put_u32(os, std::uint32_t(f.grid.n1()));
    put_u32(os, std::uint32_t(f.grid.n2()));
    os.write(reinterpret_cast<const char*>(f.values.data()), std::streamsize(f.values.size() * sizeof(double)));
    if (!os) throw Error(path + ": write failed");
}

Field read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(path + ": cannot open");
    char magic[4];
    if (!is.read(magic, 4)) throw Error(path + ": truncated header");
    if (std::memcmp(magic, kMagic, 4) != 0) throw Error(path + ": bad magic, not a RIPL field file");
    const std::uint32_t version = get_u32(is, path);
    if (version != kFieldFormatVersion)
        throw Error(path + ": unsupported format version " + std::to_string(version));
    const std::uint32_t n1 = get_u32(is, path);
    const std::uint32_t n2 = get_u32(is, path);
    Field f{Grid(int(n1), int(n2))};
    const auto bytes = std::streamsize(f.values.size() * sizeof(double));
    if (!is.read(reinterpret_cast<char*>(f.values.data()), bytes)) throw Error(path + ": truncated data");
    f.mean_x1_zero = !has_k1_zero_content(transform(f));
    return f;
}

void write_sidecar(const std::string& field_path, const FieldMeta& meta) {
    nlohmann::json j;
    if (meta.seed) j["seed"] = *meta.seed;
    if (meta.index) j["index"] = *meta.index;
    j["ensemble"] = meta.ensemble;
    j["ell"] = meta.ell;
    j["t"] = meta.t;
    std::ofstream os(field_path + ".json");
    if (!os) throw Error(field_path + ".json: cannot open for writing");
    os << j.dump(2) << "\n";
}

std::optional<FieldMeta> read_sidecar(const std::string& field_path) {
    const std::string p = field_path + ".json";
    if (!std::filesystem::exists(p)) return std::nullopt;
    std::ifstream is(p);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(p + ": " + e.what());
    }
    FieldMeta m;
    if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("index")) m.index = j["index"].get<std::uint64_t>();
    m.ensemble = j.value("ensemble", "");
    m.ell = j.value("ell", 0.0);
    m.t = j.value("t", 0.0);
    return m;
}

}  // namespace ripple
