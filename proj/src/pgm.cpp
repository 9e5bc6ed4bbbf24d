#include "riesz/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "riesz/errors.hpp"

namespace riesz {

namespace {

// next whitespace-delimited header token, skipping '#' comments
std::string header_token(std::istream& in)
{
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int header_int(std::istream& in, const std::string& path)
{
    const std::string tok = header_token(in);
    try {
        return std::stoi(tok);
    } catch (const std::exception&) {
        throw DomainError(path + ": malformed PGM header");
    }
}

}  // namespace

ImageBuffer read_pgm(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    if (header_token(in) != "P5") throw DomainError(path + ": not a binary PGM (P5)");
    const int w = header_int(in, path);
    const int h = header_int(in, path);
    const int maxval = header_int(in, path);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) throw DomainError(path + ": unsupported PGM dimensions");
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * static_cast<std::size_t>(bytes));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw DomainError(path + ": truncated PGM data");
    ImageBuffer img(w, h);
    auto s = img.samples();
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = bytes == 1 ? raw[i] : static_cast<double>((raw[2 * i] << 8) | raw[2 * i + 1]);
    return img;
}

PgmRescale write_pgm(const std::string& path, const ImageBuffer& img, int bit_depth)
{
    if (bit_depth != 8 && bit_depth != 16) throw DomainError("PGM bit depth must be 8 or 16");
    PgmRescale r;
    r.maxval = bit_depth == 8 ? 255 : 65535;
    const auto s = img.samples();
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    r.min_value = *lo;
    r.max_value = *hi;
    r.scale = r.max_value > r.min_value ? r.maxval / (r.max_value - r.min_value) : 0.0;
    r.offset = -r.scale * r.min_value;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << "P5\n" << img.width() << ' ' << img.height() << '\n' << r.maxval << '\n';
    std::vector<unsigned char> raw;
    raw.reserve(s.size() * (bit_depth / 8));
    for (double v : s) {
        const long q = std::clamp(std::lround(r.scale * v + r.offset), 0L, static_cast<long>(r.maxval));
        if (bit_depth == 16) raw.push_back(static_cast<unsigned char>(q >> 8));
        raw.push_back(static_cast<unsigned char>(q & 0xFF));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw DomainError("write failed for " + path);
    return r;
}

void write_rescale_sidecar(const std::string& path, const PgmRescale& rescale)
{
    nlohmann::ordered_json j;
    j["stored"] = "round(scale * value + offset)";
    j["scale"] = rescale.scale;
    j["offset"] = rescale.offset;
    j["min_value"] = rescale.min_value;
    j["max_value"] = rescale.max_value;
    j["maxval"] = rescale.maxval;
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace riesz
