#include "sdfkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

namespace sdfkit {

namespace {

constexpr char kMagic[4] = {'S', 'D', 'F', '1'};

void append_bytes(std::string& buf, const void* p, std::size_t n) {
    buf.append(static_cast<const char*>(p), n);
}

void append_u8(std::string& buf, std::uint8_t v) { append_bytes(buf, &v, 1); }

void append_u32_le(std::string& buf, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    append_bytes(buf, b, 4);
}

void append_f64_le(std::string& buf, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    append_bytes(buf, b, 8);
}

class Reader {
public:
    explicit Reader(const std::string& bytes) : bytes_(bytes) {}

    std::uint64_t offset() const { return offset_; }

    void need(std::size_t n, const char* what) {
        if (offset_ + n > bytes_.size())
            throw FormatError(std::string("SDF1: truncated payload, expected ") +
                                  std::to_string(offset_ + n) + " bytes for " + what + " but file has " +
                                  std::to_string(bytes_.size()),
                              offset_);
    }

    std::uint8_t read_u8(const char* what) {
        need(1, what);
        return static_cast<std::uint8_t>(bytes_[offset_++]);
    }

    std::uint32_t read_u32_le(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[offset_ + static_cast<std::size_t>(i)]))
                 << (8 * i);
        offset_ += 4;
        return v;
    }

    double read_f64_le(const char* what) {
        need(8, what);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[offset_ + static_cast<std::size_t>(i)]))
                    << (8 * i);
        offset_ += 8;
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }

    bool at_end() const { return offset_ == bytes_.size(); }

private:
    const std::string& bytes_;
    std::uint64_t offset_ = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path);
    return bytes;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::string encode_header(std::uint8_t kind, const GridSpec& spec) {
    std::string buf;
    append_bytes(buf, kMagic, 4);
    append_u8(buf, kind);
    append_u8(buf, static_cast<std::uint8_t>(spec.ndim));
    for (int a = 0; a < spec.ndim; ++a)
        append_u32_le(buf, static_cast<std::uint32_t>(spec.dims[static_cast<std::size_t>(a)]));
    append_f64_le(buf, spec.spacing);
    for (int a = 0; a < spec.ndim; ++a) append_f64_le(buf, spec.origin[static_cast<std::size_t>(a)]);
    return buf;
}

GridSpec decode_header(Reader& r, std::uint8_t& kind) {
    char magic[4];
    for (int i = 0; i < 4; ++i) magic[i] = static_cast<char>(r.read_u8("magic"));
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("SDF1: bad magic", 0);
    kind = r.read_u8("payload kind");
    if (kind > 1) throw FormatError("SDF1: unknown payload kind " + std::to_string(kind), r.offset() - 1);
    const std::uint8_t ndim = r.read_u8("ndim");
    if (ndim < 1 || ndim > kMaxNdim)
        throw FormatError("SDF1: ndim out of range: " + std::to_string(ndim), r.offset() - 1);
    GridSpec spec;
    spec.ndim = ndim;
    std::int64_t n = 1;
    for (int a = 0; a < ndim; ++a) {
        const std::uint32_t d = r.read_u32_le("dims");
        if (d == 0) throw FormatError("SDF1: zero dim", r.offset() - 4);
        n *= static_cast<std::int64_t>(d);
        if (n > (std::int64_t(1) << 31))
            throw FormatError("SDF1: dims overflow the index type", r.offset() - 4);
        spec.dims[static_cast<std::size_t>(a)] = static_cast<int>(d);
    }
    spec.spacing = r.read_f64_le("spacing");
    if (!(spec.spacing > 0.0) || !std::isfinite(spec.spacing))
        throw FormatError("SDF1: spacing must be positive and finite", r.offset() - 8);
    for (int a = 0; a < ndim; ++a) spec.origin[static_cast<std::size_t>(a)] = r.read_f64_le("origin");
    return spec;
}

FILE* open_text(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open for writing: " + path);
    return f;
}

void close_text(FILE* f, const std::string& path) {
    if (std::fclose(f) != 0) throw IoError("write failed: " + path);
}

template <class FieldT, class Format>
void write_csv_impl(const std::string& path, const FieldT& field, Format&& format_value) {
    const GridSpec& spec = field.spec;
    if (spec.ndim > 2) throw std::invalid_argument("write_csv: only 1D/2D fields have a CSV form");
    FILE* f = open_text(path);
    std::fputs(spec.ndim == 1 ? "i,value\n" : "i,j,value\n", f);
    const std::int64_t n = spec.cell_count();
    for (std::int64_t i = 0; i < n; ++i) {
        const auto nd = spec.nd_index(i);
        if (spec.ndim == 1)
            std::fprintf(f, "%lld,%s\n", static_cast<long long>(nd[0]), format_value(field[i]).c_str());
        else
            std::fprintf(f, "%lld,%lld,%s\n", static_cast<long long>(nd[0]), static_cast<long long>(nd[1]),
                         format_value(field[i]).c_str());
    }
    close_text(f, path);
}

template <class FieldT>
void write_pgm_impl(const std::string& path, const FieldT& field) {
    const GridSpec& spec = field.spec;
    if (spec.ndim != 2) throw std::invalid_argument("write_pgm: only 2D fields have a PGM form");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const std::int64_t n = spec.cell_count();
    for (std::int64_t i = 0; i < n; ++i) {
        lo = std::min(lo, static_cast<double>(field[i]));
        hi = std::max(hi, static_cast<double>(field[i]));
    }
    const double span = hi - lo;
    std::string buf;
    buf += "P5\n";
    buf += "# min=" + format_double(lo) + " max=" + format_double(hi) + "\n";
    buf += std::to_string(spec.dims[1]) + " " + std::to_string(spec.dims[0]) + "\n255\n";
    buf.reserve(buf.size() + static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = static_cast<double>(field[i]);
        const double t = (span > 0.0) ? (v - lo) / span : 0.0;
        buf += static_cast<char>(static_cast<int>(std::lround(t * 255.0)));
    }
    write_file(path, buf);
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void save_field(const std::string& path, const ScalarField& field) {
    field.spec.validate();
    std::string buf = encode_header(0, field.spec);
    for (double v : field.values) append_f64_le(buf, v);
    write_file(path, buf);
}

void save_field(const std::string& path, const BinaryField& field) {
    field.spec.validate();
    std::string buf = encode_header(1, field.spec);
    for (std::uint8_t v : field.values) append_u8(buf, v);
    write_file(path, buf);
}

LoadedField load_field(const std::string& path) {
    const std::string bytes = read_file(path);
    Reader r(bytes);
    std::uint8_t kind = 0;
    const GridSpec spec = decode_header(r, kind);
    const std::int64_t n = spec.cell_count();
    if (kind == 0) {
        ScalarField field = ScalarField::zeros(spec);
        r.need(static_cast<std::size_t>(n) * 8, "scalar payload");
        for (std::int64_t i = 0; i < n; ++i) field[i] = r.read_f64_le("scalar payload");
        if (!r.at_end()) throw FormatError("SDF1: trailing bytes after payload", r.offset());
        return field;
    }
    BinaryField field = BinaryField::zeros(spec);
    r.need(static_cast<std::size_t>(n), "binary payload");
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint8_t v = r.read_u8("binary payload");
        if (v > 1) throw FormatError("SDF1: binary payload byte is not 0/1", r.offset() - 1);
        field[i] = v;
    }
    if (!r.at_end()) throw FormatError("SDF1: trailing bytes after payload", r.offset());
    return field;
}

ScalarField load_scalar_field(const std::string& path) {
    LoadedField f = load_field(path);
    if (auto* s = std::get_if<ScalarField>(&f)) return std::move(*s);
    throw FormatError("SDF1: expected a scalar field in " + path, 4);
}

BinaryField load_binary_field(const std::string& path) {
    LoadedField f = load_field(path);
    if (auto* b = std::get_if<BinaryField>(&f)) return std::move(*b);
    throw FormatError("SDF1: expected a binary field in " + path, 4);
}

void write_csv(const std::string& path, const ScalarField& field) {
    write_csv_impl(path, field, [](double v) { return format_double(v); });
}

void write_csv(const std::string& path, const BinaryField& field) {
    write_csv_impl(path, field, [](std::uint8_t v) { return std::string(v ? "1" : "0"); });
}

void write_pgm(const std::string& path, const ScalarField& field) { write_pgm_impl(path, field); }
void write_pgm(const std::string& path, const BinaryField& field) { write_pgm_impl(path, field); }

} // namespace sdfkit
