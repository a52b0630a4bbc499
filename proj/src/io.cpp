#include "kakeya/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kakeya {

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += quote(header[i]);
    }
    buf_ += "\r\n";
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string CsvWriter::quote(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += format(values[i]);
    }
    buf_ += "\r\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += quote(cells[i]);
    }
    buf_ += "\r\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
}

void write_pgm16(const std::string& path, const RasterSet& raster, const std::string& note) {
    const int n = raster.n();
    std::string data;
    data.reserve(64 + static_cast<size_t>(n) * n * 2);
    char head[64];
    std::snprintf(head, sizeof(head), "P5\n%d %d\n65535\n", n, n);
    data += head;
    for (int iy = n - 1; iy >= 0; --iy) {  // file top row = highest y
        for (int ix = 0; ix < n; ++ix) {
            const double c = std::clamp(raster.at(ix, iy), 0.0, 1.0);
            const auto v = static_cast<uint16_t>(std::lround(c * 65535.0));
            data += static_cast<char>(v >> 8);
            data += static_cast<char>(v & 0xff);
        }
    }
    write_text_file(path, data);

    nlohmann::ordered_json side;
    side["format"] = "pgm16";
    side["grid"] = {{"origin", {raster.grid().origin.x, raster.grid().origin.y}},
                    {"side", raster.grid().side},
                    {"cells_per_side", raster.grid().cells_per_side}};
    if (!note.empty()) side["note"] = note;
    side["digest"] = hex64(fnv1a64(data));
    write_text_file(path + ".json", side.dump(2) + "\n");
}

RasterSet read_pgm16(const std::string& path) {
    const std::string data = read_text_file(path);
    int w = 0, h = 0, maxval = 0, off = 0;
    if (std::sscanf(data.c_str(), "P5\n%d %d\n%d\n%n", &w, &h, &maxval, &off) < 3 || off <= 0)
        throw IoError("malformed PGM header: " + path);
    if (maxval != 65535 || w != h) throw IoError("unsupported PGM variant: " + path);
    if (data.size() < static_cast<size_t>(off) + static_cast<size_t>(w) * h * 2)
        throw IoError("truncated PGM data: " + path);

    GridSpec g;
    const std::string sidecar_path = path + ".json";
    try {
        const auto side = nlohmann::json::parse(read_text_file(sidecar_path));
        g.origin = {side.at("grid").at("origin").at(0).get<double>(),
                    side.at("grid").at("origin").at(1).get<double>()};
        g.side = side.at("grid").at("side").get<double>();
        g.cells_per_side = side.at("grid").at("cells_per_side").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed PGM sidecar " + sidecar_path + ": " + e.what());
    }
    if (g.cells_per_side != w) throw IoError("sidecar grid disagrees with PGM size: " + path);

    RasterSet out(g);
    const auto* p = reinterpret_cast<const unsigned char*>(data.data() + off);
    for (int iy = h - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < w; ++ix) {
            const uint16_t v = static_cast<uint16_t>((p[0] << 8) | p[1]);
            p += 2;
            out.at(ix, iy) = v / 65535.0;
        }
    }
    return out;
}

SvgDoc::SvgDoc(double width, double height, double vb_x, double vb_y, double vb_w, double vb_h) {
    buf_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    buf_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) +
            "\" height=\"" + fmt(height) + "\" viewBox=\"" + fmt(vb_x) + " " + fmt(vb_y) + " " +
            fmt(vb_w) + " " + fmt(vb_h) + "\">\n";
}

std::string SvgDoc::fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string SvgDoc::escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void SvgDoc::open_group(const std::string& attrs) {
    buf_ += "<g " + attrs + ">\n";
    ++open_groups_;
}

void SvgDoc::close_group() {
    buf_ += "</g>\n";
    --open_groups_;
}

void SvgDoc::rect(double x, double y, double w, double h, const std::string& style) {
    buf_ += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) + "\" height=\"" +
            fmt(h) + "\" " + style + "/>\n";
}

void SvgDoc::path(const std::vector<Vec2>& pts, bool closed, const std::string& style) {
    if (pts.empty()) return;
    std::string d = "M" + fmt(pts[0].x) + " " + fmt(pts[0].y);
    for (size_t i = 1; i < pts.size(); ++i) d += " L" + fmt(pts[i].x) + " " + fmt(pts[i].y);
    if (closed) d += " Z";
    buf_ += "<path d=\"" + d + "\" " + style + "/>\n";
}

void SvgDoc::circle(double cx, double cy, double r, const std::string& style) {
    buf_ += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) + "\" " + style +
            "/>\n";
}

void SvgDoc::line(double x1, double y1, double x2, double y2, const std::string& style) {
    buf_ += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" +
            fmt(y2) + "\" " + style + "/>\n";
}

void SvgDoc::text(double x, double y, const std::string& content, const std::string& style) {
    buf_ += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" " + style + ">" + escape(content) +
            "</text>\n";
}

void SvgDoc::raw(const std::string& s) { buf_ += s; }

std::string SvgDoc::finish() {
    while (open_groups_ > 0) close_group();
    if (!finished_) {
        buf_ += "</svg>\n";
        finished_ = true;
    }
    return buf_;
}

}  // namespace kakeya
