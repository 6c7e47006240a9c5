#include "blc/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace blc {

namespace {

constexpr char kDbMagic[] = "BLDB1";
constexpr std::size_t kDbMagicLen = 5;

void write_u32_le(std::ostream& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t read_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw DecodeError("truncated database");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t read_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw DecodeError("truncated database");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double map_diagonal(const BinaryMap& map) {
    const double w = static_cast<double>(map.width());
    const double h = static_cast<double>(map.height());
    return std::sqrt(w * w + h * h);
}

}  // namespace

FrameRecord FrameRecord::make(std::uint64_t frame_id, BinaryMap map, std::string image_ref) {
    FrameRecord rec;
    rec.frame_id = frame_id;
    rec.pop = popcount(map);
    rec.center = centroid(map);
    rec.map = std::move(map);
    rec.image_ref = std::move(image_ref);
    return rec;
}

bool prefilter(const FrameRecord& a, const FrameRecord& b, const RetrievalParams& params) {
    if (!a.center.defined || !b.center.defined) return false;
    const auto dist = centroid_distance(a.center, b.center, map_diagonal(a.map));
    if (!dist || *dist > params.centroid_max) return false;
    const double lo = static_cast<double>(std::min(a.pop, b.pop));
    const double hi = static_cast<double>(std::max(a.pop, b.pop));
    return lo / hi >= params.xi_min;
}

void FrameDatabase::insert(FrameRecord rec) {
    if (!records_.empty() && rec.frame_id <= records_.back().frame_id)
        throw NonMonotoneId("insert id " + std::to_string(rec.frame_id) +
                            " after id " + std::to_string(records_.back().frame_id));
    records_.push_back(std::move(rec));
}

std::vector<LoopCandidate> FrameDatabase::query(const FrameRecord& rec,
                                                const RetrievalParams& params) const {
    std::vector<LoopCandidate> out;
    if (rec.pop == 0) return out;
    if (rec.frame_id < params.temporal_gap) return out;
    const std::uint64_t newest_admissible = rec.frame_id - params.temporal_gap;

    const double diagonal = map_diagonal(rec.map);
    for (const FrameRecord& other : records_) {
        if (other.frame_id > newest_admissible) break;  // ids are monotone
        if (!prefilter(rec, other, params)) continue;
        const double xi = similarity(rec.map, other.map);
        if (xi < params.xi_min) continue;
        const auto dist = centroid_distance(rec.center, other.center, diagonal);
        out.push_back({rec.frame_id, other.frame_id, xi, *dist});
    }

    std::sort(out.begin(), out.end(), [](const LoopCandidate& a, const LoopCandidate& b) {
        if (a.xi != b.xi) return a.xi > b.xi;
        return a.match_id < b.match_id;
    });
    if (out.size() > params.max_candidates) out.resize(params.max_candidates);
    return out;
}

void FrameDatabase::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(kDbMagic, kDbMagicLen);
    write_u64_le(out, records_.size());
    for (const FrameRecord& rec : records_) {
        write_u64_le(out, rec.frame_id);
        write_u32_le(out, static_cast<std::uint32_t>(rec.image_ref.size()));
        out.write(rec.image_ref.data(), static_cast<std::streamsize>(rec.image_ref.size()));
        serialize(rec.map, out);
    }
    if (!out) throw Error("write failed: " + path);
}

FrameDatabase FrameDatabase::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);
    char magic[kDbMagicLen];
    in.read(magic, kDbMagicLen);
    if (!in || std::string(magic, kDbMagicLen) != kDbMagic)
        throw ParseError(path + ": not a frame database (bad magic)");

    FrameDatabase db;
    const std::uint64_t count = read_u64_le(in);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t id = read_u64_le(in);
        const std::uint32_t ref_len = read_u32_le(in);
        std::string ref(ref_len, '\0');
        in.read(ref.data(), static_cast<std::streamsize>(ref_len));
        if (!in) throw DecodeError(path + ": truncated record " + std::to_string(i));
        BinaryMap map = deserialize(in);
        db.insert(FrameRecord::make(id, std::move(map), std::move(ref)));
    }
    return db;
}

}  // namespace blc
