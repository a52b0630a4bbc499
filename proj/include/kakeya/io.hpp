#pragma once

#include <string>
#include <vector>

#include "kakeya/raster.hpp"

namespace kakeya {

// RFC-4180 CSV with a header row. Numeric cells are formatted with %.12g so
// identical runs produce identical bytes.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);

    const std::string& str() const { return buf_; }
    static std::string format(double v);
    static std::string quote(const std::string& cell);

  private:
    size_t width_;
    std::string buf_;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

// Binary 16-bit PGM (P5, maxval 65535, big-endian rows bottom-up is NOT
// used: row 0 of the file is the top row, i.e. the highest y). A JSON
// sidecar at <path>.json records the grid spec so the raster round-trips.
void write_pgm16(const std::string& path, const RasterSet& raster, const std::string& note = "");
RasterSet read_pgm16(const std::string& path);

// Minimal deterministic SVG 1.1 document builder.
class SvgDoc {
  public:
    SvgDoc(double width, double height, double vb_x, double vb_y, double vb_w, double vb_h);

    void open_group(const std::string& attrs);
    void close_group();
    void rect(double x, double y, double w, double h, const std::string& style);
    void path(const std::vector<Vec2>& pts, bool closed, const std::string& style);
    void circle(double cx, double cy, double r, const std::string& style);
    void line(double x1, double y1, double x2, double y2, const std::string& style);
    void text(double x, double y, const std::string& content, const std::string& style);
    void raw(const std::string& s);

    std::string finish();
    static std::string fmt(double v);
    static std::string escape(const std::string& s);

  private:
    std::string buf_;
    int open_groups_ = 0;
    bool finished_ = false;
};

}  // namespace kakeya
