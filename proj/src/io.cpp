#include "sqg/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqg {

namespace {

// checkpoint payloads are little-endian f64 by contract
static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[8] = {'S', 'Q', 'G', 'C', 'K', 'P', 'T', '1'};
constexpr uint32_t kVersion = 1;

void put_u32(std::string& s, uint32_t v) { s.append(reinterpret_cast<char*>(&v), 4); }
void put_f64(std::string& s, double v) { s.append(reinterpret_cast<char*>(&v), 8); }

uint32_t get_u32(const char*& p) {
    uint32_t v;
    std::memcpy(&v, p, 4);
    p += 4;
    return v;
}
double get_f64(const char*& p) {
    double v;
    std::memcpy(&v, p, 8);
    p += 8;
    return v;
}

}  // namespace

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("atomic_write: short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_checkpoint(const std::string& path, const SpectralField& f, double alpha,
                      double time) {
    std::string bytes;
    bytes.reserve(48 + f.coeff.size() * 16);
    bytes.append(kMagic, 8);
    put_u32(bytes, kVersion);
    put_u32(bytes, static_cast<uint32_t>(f.grid.n));
    put_f64(bytes, f.grid.box_length);
    put_f64(bytes, f.grid.dealias_fraction);
    put_f64(bytes, alpha);
    put_f64(bytes, time);
    for (const Complex& c : f.coeff) {
        put_f64(bytes, c.real());
        put_f64(bytes, c.imag());
    }
    atomic_write(path, bytes);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_checkpoint: cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    if (bytes.size() < 48 || std::memcmp(bytes.data(), kMagic, 8) != 0)
        throw std::runtime_error("read_checkpoint: bad magic in " + path);
    const char* p = bytes.data() + 8;
    const uint32_t version = get_u32(p);
    if (version != kVersion) throw std::runtime_error("read_checkpoint: unknown version");
    Checkpoint ck;
    GridSpec g;
    g.n = static_cast<int>(get_u32(p));
    g.box_length = get_f64(p);
    g.dealias_fraction = get_f64(p);
    ck.alpha = get_f64(p);
    ck.time = get_f64(p);
    const size_t expect = 48 + static_cast<size_t>(g.n) * g.n * 16;
    if (bytes.size() != expect)
        throw std::runtime_error("read_checkpoint: truncated payload in " + path);
    ck.field = SpectralField(g);
    for (Complex& c : ck.field.coeff) {
        const double re = get_f64(p);
        const double im = get_f64(p);
        c = Complex(re, im);
    }
    return ck;
}

std::string to_csv(const SeriesTable& tb) {
    std::ostringstream out;
    for (size_t c = 0; c < tb.columns.size(); ++c)
        out << (c ? "," : "") << tb.columns[c];
    out << "\n";
    char buf[40];
    for (const auto& row : tb.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[c]);
            out << (c ? "," : "") << buf;
        }
        out << "\n";
    }
    return out.str();
}

SeriesTable from_csv(const std::string& text) {
    SeriesTable tb;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("from_csv: empty input");
    std::istringstream hdr(line);
    std::string tok;
    while (std::getline(hdr, tok, ',')) tb.columns.push_back(tok);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(tb.columns.size());
        std::istringstream ls(line);
        while (std::getline(ls, tok, ',')) row.push_back(std::strtod(tok.c_str(), nullptr));
        if (row.size() != tb.columns.size())
            throw std::runtime_error("from_csv: ragged row");
        tb.rows.push_back(std::move(row));
    }
    return tb;
}

void write_csv(const std::string& path, const SeriesTable& tb) {
    atomic_write(path, to_csv(tb));
}

SeriesTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_csv(text);
}

void write_json(const std::string& path, const nlohmann::json& j) {
    atomic_write(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_json: cannot open " + path);
    return nlohmann::json::parse(in);
}

std::string spectrum_text(const SeriesTable& tb, size_t row) {
    std::ostringstream out;
    out << "# shell  e_j   (t = " << tb.at(row, "t") << ")\n";
    for (size_t c = 0; c < tb.columns.size(); ++c) {
        if (tb.columns[c].rfind("shell_", 0) != 0) continue;
        out << tb.columns[c].substr(6) << "  " << tb.rows[row][c] << "\n";
    }
    return out.str();
}

}  // namespace sqg
