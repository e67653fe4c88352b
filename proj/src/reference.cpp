#include "stereogen/reference.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace stereogen::reference {

GradientMap sobel_gradient_norm(const GrayImage& img) {
    if (img.width < 3 || img.height < 3) {
        throw DimensionError("sobel needs at least 3x3");
    }
    static constexpr int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    static constexpr int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};

    GradientMap map;
    map.width = img.width;
    map.height = img.height;
    map.norms.resize(img.pixels.size());
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            int gx = 0, gy = 0;
            for (int i = -1; i <= 1; ++i) {
                for (int j = -1; j <= 1; ++j) {
                    const int rr = std::clamp(r + i, 0, img.height - 1);
                    const int cc = std::clamp(c + j, 0, img.width - 1);
                    gx += kx[i + 1][j + 1] * img.at(rr, cc);
                    gy += ky[i + 1][j + 1] * img.at(rr, cc);
                }
            }
            map.norms[static_cast<std::size_t>(r) * img.width + c] =
                std::sqrt(static_cast<double>(gx) * gx + static_cast<double>(gy) * gy);
        }
    }
    return map;
}

PossibilityVolume build_possibility_volume(const StereoPair& pair, int d_max,
                                           const MembershipParams& params) {
    if (d_max < 0 || d_max >= pair.target.width) throw ConfigError("d_max out of range");
    PossibilityVolume vol;
    vol.width = pair.reference.width;
    vol.height = pair.reference.height;
    vol.d_max = d_max;
    vol.values.resize(static_cast<std::size_t>(vol.width) * vol.height * (d_max + 1));
    std::size_t idx = 0;
    for (int r = 0; r < vol.height; ++r) {
        for (int c = 0; c < vol.width; ++c) {
            for (int d = 0; d <= d_max; ++d) {
                vol.values[idx++] =
                    c + d < vol.width ? matching_possibility(pair.reference.at(r, c), pair.target.at(r, c + d), params)
                                      : 0.0;
            }
        }
    }
    return vol;
}

double fitness(const Chromosome& chrom, const FitnessContext& ctx) {
    const int w = ctx.volume.width;
    const int h = ctx.volume.height;
    const int nr = ctx.neighborhood_radius;
    if (chrom.width != w || chrom.height != h) throw DimensionError("chromosome does not match context");

    double total = 0.0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int d = chrom.at(r, c);
            const double s = c + d < w ? ctx.ref_grad.at(r, c) * ctx.tgt_grad.at(r, c + d) : 0.0;
            double window = 0.0;
            for (int i = -nr; i <= nr; ++i) {
                for (int j = -nr; j <= nr; ++j) {
                    const int rr = r + i;
                    const int cc = c + j;
                    if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                    window += ctx.volume.at(rr, cc, chrom.at(rr, cc));
                }
            }
            total += s * window;
        }
    }
    return total;
}

Chromosome sad_block_match(const StereoPair& pair, int d_max, int window_radius) {
    const int w = pair.reference.width;
    const int h = pair.reference.height;
    if (d_max < 0 || d_max >= w) throw ConfigError("d_max out of range");

    Chromosome out(w, h, 0);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            int best_cost = INT_MAX;
            disp_t best_d = 0;
            for (int d = 0; d <= d_max; ++d) {
                int cost = 0;
                for (int i = -window_radius; i <= window_radius; ++i) {
                    for (int j = -window_radius; j <= window_radius; ++j) {
                        const int rr = std::clamp(r + i, 0, h - 1);
                        const int rc = std::clamp(c + j, 0, w - 1);
                        const int tc = std::min(rc + d, w - 1);
                        cost += std::abs(static_cast<int>(pair.reference.at(rr, rc)) -
                                         static_cast<int>(pair.target.at(rr, tc)));
                    }
                }
                if (cost < best_cost) {
                    best_cost = cost;
                    best_d = static_cast<disp_t>(d);
                }
            }
            out.at(r, c) = best_d;
        }
    }
    return out;
}

} // namespace stereogen::reference
