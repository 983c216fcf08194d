#include "texseg/imageio.hpp"

#include <png.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace texseg {

namespace {

// Skips whitespace and '#' comment lines, then reads one nonnegative
// integer; reports the byte offset on failure.
int read_pnm_int(std::istream& in, const std::string& path) {
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
        } else if (!std::isspace(ch)) {
            in.unget();
            break;
        }
    }
    int value;
    if (!(in >> value) || value < 0)
        throw std::runtime_error(path + ": malformed header/value near byte offset " +
                                 std::to_string(static_cast<long long>(in.tellg())));
    return value;
}

}  // namespace

Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string magic;
    in >> magic;
    if (magic != "P2" && magic != "P5")
        throw std::runtime_error(path + ": unsupported PGM magic '" + magic + "'");
    const int cols = read_pnm_int(in, path);
    const int rows = read_pnm_int(in, path);
    const int maxval = read_pnm_int(in, path);
    if (cols < 1 || rows < 1 || maxval < 1 || maxval > 255)
        throw std::runtime_error(path + ": unsupported PGM geometry or depth");
    Image img(rows, cols);
    if (magic == "P5") {
        in.get();  // single whitespace after maxval
        std::vector<unsigned char> buf(img.size());
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<size_t>(in.gcount()) != buf.size())
            throw std::runtime_error(path + ": truncated pixel data at byte offset " +
                                     std::to_string(static_cast<long long>(in.tellg())));
        for (size_t k = 0; k < buf.size(); ++k)
            img.data[k] = static_cast<double>(buf[k]) / maxval;
    } else {
        for (size_t k = 0; k < img.size(); ++k) {
            const int v = read_pnm_int(in, path);
            if (v > maxval) throw std::runtime_error(path + ": sample exceeds maxval");
            img.data[k] = static_cast<double>(v) / maxval;
        }
    }
    return img;
}

Image load_png_gray(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw std::runtime_error(path + ": cannot open");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw std::runtime_error(path + ": libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw std::runtime_error(path + ": PNG decode error");
    }
    png_init_io(png, fp);
    png_read_info(png, info);
    // normalize everything to 8-bit RGB or gray without alpha
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);
    const int rows = static_cast<int>(png_get_image_height(png, info));
    const int cols = static_cast<int>(png_get_image_width(png, info));
    const int channels = png_get_channels(png, info);
    std::vector<unsigned char> rowbuf(png_get_rowbytes(png, info));
    Image img(rows, cols);
    for (int i = 0; i < rows; ++i) {
        png_read_row(png, rowbuf.data(), nullptr);
        for (int j = 0; j < cols; ++j) {
            double v;
            if (channels >= 3) {
                // ITU-R 601 luminance
                v = 0.299 * rowbuf[j * channels] + 0.587 * rowbuf[j * channels + 1] +
                    0.114 * rowbuf[j * channels + 2];
            } else {
                v = rowbuf[j * channels];
            }
            img(i, j) = v / 255.0;
        }
    }
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}

Image load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error(path + ": cannot open");
    unsigned char sig[8] = {0};
    probe.read(reinterpret_cast<char*>(sig), 8);
    probe.close();
    if (sig[0] == 'P' && (sig[1] == '2' || sig[1] == '5')) return load_pgm(path);
    if (sig[0] == 0x89 && sig[1] == 'P' && sig[2] == 'N' && sig[3] == 'G')
        return load_png_gray(path);
    throw std::runtime_error(path + ": unsupported format (expect PGM P2/P5 or PNG)");
}

void save_pgm(const Image& x, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "P5\n" << x.cols << " " << x.rows << "\n255\n";
    std::vector<unsigned char> buf(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
        const double v = std::min(1.0, std::max(0.0, x.data[k]));
        buf[k] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error(path + ": write failed");
}

void save_raw(const Image& x, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out.write(reinterpret_cast<const char*>(x.data.data()),
              static_cast<std::streamsize>(x.size() * sizeof(double)));
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace texseg
