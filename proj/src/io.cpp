#include "wmh/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace wmh {

namespace {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

[[noreturn]] void malformed(std::size_t line, const std::string &what) {
    throw Error(ErrorCode::MalformedStream, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::pair<std::uint64_t, double>> parse_tokens(const std::string &text, std::size_t line_no) {
    std::vector<std::pair<std::uint64_t, double>> pairs;
    std::istringstream tokens(text);
    std::string tok;
    while (tokens >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) malformed(line_no, "expected <index>:<weight>, got '" + tok + "'");
        std::uint64_t index = 0;
        double weight = 0.0;
        const char *b = tok.data();
        const char *e = tok.data() + tok.size();
        auto r1 = std::from_chars(b, b + colon, index);
        auto r2 = std::from_chars(b + colon + 1, e, weight);
        if (r1.ec != std::errc{} || r1.ptr != b + colon || r2.ec != std::errc{} || r2.ptr != e) {
            malformed(line_no, "bad token '" + tok + "'");
        }
        pairs.emplace_back(index, weight);
    }
    return pairs;
}

} // namespace

DatasetFile read_dataset(std::istream &in) {
    DatasetFile file;
    std::string line;
    std::size_t line_no = 0;
    bool have_universe = false;
    bool bounds_next = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (bounds_next) {
            bounds_next = false;
            std::vector<std::pair<ElementId, double>> bounds;
            for (const auto &[k, u] : parse_tokens(line, line_no)) {
                if (k >= file.universe_size) malformed(line_no, "bound index out of range");
                bounds.emplace_back(static_cast<ElementId>(k), u);
            }
            file.layout = RedGreenLayout::from_bounds(file.universe_size, std::move(bounds));
            continue;
        }
        if (line.starts_with("#universe")) {
            std::istringstream hdr(line.substr(9));
            std::uint64_t n = 0;
            if (!(hdr >> n) || n == 0) malformed(line_no, "bad #universe header");
            file.universe_size = n;
            have_universe = true;
            continue;
        }
        if (line.starts_with("#bounds")) {
            if (!have_universe) malformed(line_no, "#bounds before #universe");
            bounds_next = true;
            continue;
        }
        if (line.starts_with("#")) continue;
        if (!have_universe) malformed(line_no, "missing #universe header");
        try {
            file.sets.push_back(make_weighted_set(file.universe_size, parse_tokens(line, line_no)));
        } catch (const Error &e) {
            if (e.code() == ErrorCode::MalformedStream) throw;
            throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (bounds_next) malformed(line_no, "#bounds without a bounds line");
    if (!have_universe) malformed(line_no, "missing #universe header");
    return file;
}

void write_dataset(std::ostream &out, std::uint64_t universe_size, const Dataset &sets,
                   const RedGreenLayout *layout) {
    out << "#universe " << universe_size << '\n';
    for (const auto &s : sets) {
        bool first = true;
        for (const auto &e : s.entries()) {
            if (!first) out << ' ';
            first = false;
            out << e.id << ':' << format_double(e.weight);
        }
        out << '\n';
    }
    if (layout) {
        out << "#bounds\n";
        for (std::size_t i = 0; i < layout->ids.size(); ++i) {
            if (i > 0) out << ' ';
            out << layout->ids[i] << ':' << format_double(layout->bounds[i]);
        }
        out << '\n';
    }
}

DatasetFile load_dataset(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return read_dataset(in);
}

void save_dataset(const std::filesystem::path &path, std::uint64_t universe_size, const Dataset &sets,
                  const RedGreenLayout *layout) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write_dataset(out, universe_size, sets, layout);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Binary fingerprints

namespace {

template <class T>
void put(std::ostream &out, T v) {
    std::array<char, sizeof(T)> bytes;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bytes[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
    }
    out.write(bytes.data(), bytes.size());
}

template <class T>
T get(std::istream &in) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!in.read(reinterpret_cast<char *>(bytes.data()), bytes.size())) {
        throw Error(ErrorCode::MalformedStream, "truncated fingerprint stream");
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return static_cast<T>(v);
}

constexpr std::array<char, 4> kMagic = {'W', 'M', 'H', 'F'};
constexpr std::uint8_t kVersion = 1;

} // namespace

void write_fingerprint(std::ostream &out, const Fingerprint &fp) {
    const CodeKind kind = code_kind(fp.algo);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(fp.algo));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(fp.codes.size()));
    put<std::uint64_t>(out, fp.seed);
    for (const auto &code : fp.codes) {
        if (kind_of(code) != kind) throw Error(ErrorCode::Internal, "code variant does not match algorithm");
        std::visit(
            [&](const auto &c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, MinValue>) {
                    put<std::uint64_t>(out, c.value);
                } else if constexpr (std::is_same_v<T, IndexSub>) {
                    put<std::uint32_t>(out, c.k);
                    put<std::uint64_t>(out, c.i);
                } else if constexpr (std::is_same_v<T, IndexY>) {
                    put<std::uint32_t>(out, c.k);
                    put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(c.y));
                } else if constexpr (std::is_same_v<T, IndexOnly>) {
                    put<std::uint32_t>(out, c.k);
                } else {
                    put<std::uint64_t>(out, c.t);
                }
            },
            code);
    }
}

Fingerprint read_fingerprint(std::istream &in, std::optional<Algorithm> expected) {
    const auto tag = get<std::uint8_t>(in);
    if (expected && tag != static_cast<std::uint8_t>(*expected)) {
        throw Error(ErrorCode::AlgorithmMismatch, "expected " + std::string(name_of(*expected)) +
                                                      ", found tag " + std::to_string(tag));
    }
    const auto algo = algorithm_from_tag(tag);
    if (!algo) throw Error(ErrorCode::MalformedStream, "unknown algorithm tag " + std::to_string(tag));
    Fingerprint fp;
    fp.algo = *algo;
    const auto count = get<std::uint32_t>(in);
    fp.seed = get<std::uint64_t>(in);
    fp.codes.reserve(std::min<std::uint32_t>(count, 1u << 20));
    const CodeKind kind = code_kind(fp.algo);
    for (std::uint32_t i = 0; i < count; ++i) {
        switch (kind) {
        case CodeKind::MinValue: fp.codes.emplace_back(MinValue{get<std::uint64_t>(in)}); break;
        case CodeKind::IndexSub: {
            const auto k = get<std::uint32_t>(in);
            fp.codes.emplace_back(IndexSub{k, get<std::uint64_t>(in)});
            break;
        }
        case CodeKind::IndexY: {
            const auto k = get<std::uint32_t>(in);
            fp.codes.emplace_back(IndexY{k, std::bit_cast<double>(get<std::uint64_t>(in))});
            break;
        }
        case CodeKind::IndexOnly: fp.codes.emplace_back(IndexOnly{get<std::uint32_t>(in)}); break;
        case CodeKind::StepCount: fp.codes.emplace_back(StepCount{get<std::uint64_t>(in)}); break;
        }
    }
    return fp;
}

void write_fingerprint_file(std::ostream &out, std::span<const Fingerprint> fps) {
    out.write(kMagic.data(), kMagic.size());
    put<std::uint8_t>(out, kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(fps.size()));
    for (const auto &fp : fps) write_fingerprint(out, fp);
}

std::vector<Fingerprint> read_fingerprint_file(std::istream &in, std::optional<Algorithm> expected) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw Error(ErrorCode::MalformedStream, "not a fingerprint file");
    }
    if (get<std::uint8_t>(in) != kVersion) throw Error(ErrorCode::MalformedStream, "unsupported version");
    const auto count = get<std::uint32_t>(in);
    std::vector<Fingerprint> fps;
    for (std::uint32_t i = 0; i < count; ++i) fps.push_back(read_fingerprint(in, expected));
    if (in.peek() != std::char_traits<char>::eof()) {
        throw Error(ErrorCode::MalformedStream, "trailing bytes after last record");
    }
    return fps;
}

void save_fingerprints(const std::filesystem::path &path, std::span<const Fingerprint> fps) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write_fingerprint_file(out, fps);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::vector<Fingerprint> load_fingerprints(const std::filesystem::path &path,
                                           std::optional<Algorithm> expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return read_fingerprint_file(in, expected);
}

} // namespace wmh
