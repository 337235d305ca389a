#pragma once

#include <string>

#include "json.hpp"
#include "sqg/field.hpp"
#include "sqg/series.hpp"

namespace sqg {

/// Self-describing binary state file.  Header: magic "SQGCKPT1", u32
/// version, u32 n, then box_length, dealias_fraction, alpha, time as
/// little-endian f64; payload: n*n (re, im) pairs of little-endian f64 in
/// FFT row-major order.
struct Checkpoint {
    SpectralField field;
    double alpha = 0.0;
    double time = 0.0;
};

void write_checkpoint(const std::string& path, const SpectralField& f, double alpha,
                      double time);
Checkpoint read_checkpoint(const std::string& path);

/// Write-then-rename so no reader ever sees a truncated file.
void atomic_write(const std::string& path, const std::string& content);

/// CSV with a header row; doubles at full round-trip precision (%.17g).
std::string to_csv(const SeriesTable& tb);
SeriesTable from_csv(const std::string& text);
void write_csv(const std::string& path, const SeriesTable& tb);
SeriesTable read_csv(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

/// Plain-text shell spectrum dump for eyeballing.
std::string spectrum_text(const SeriesTable& tb, size_t row);

}  // namespace sqg
