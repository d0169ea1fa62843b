#include "epcat/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace epcat {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0) return "0";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

constexpr const char* kSchema = "epcat/1";

ordered_json point_json(const ParamPoint& p) {
    ordered_json o = ordered_json::object();
    for (const auto& [name, value] : p) o[name] = value.d;
    return o;
}

ordered_json record_json(const EpRecord& r) {
    ordered_json o;
    o["family"] = r.family;
    o["fixed"] = point_json(r.fixed);
    o["free_param"] = r.free_param;
    o["location"] = r.location;
    if (r.location_exact) o["location_exact"] = to_string(*r.location_exact);
    ordered_json etas = ordered_json::array();
    for (const auto& [eta, mult] : r.degenerate_eigenvalues) {
        ordered_json e;
        e["re"] = eta.real();
        e["im"] = eta.imag();
        e["alg_mult"] = mult;
        etas.push_back(std::move(e));
    }
    o["etas"] = std::move(etas);
    o["partition"] = r.partition;
    o["K"] = r.geometric_multiplicity;
    o["on_reality_boundary"] = r.is_on_reality_boundary;
    return o;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

struct Frame {
    double x0, x1, y0, y1;         // data ranges
    double px0, px1, py0, py1;     // pixel ranges (py0 is the top)

    double x(double v) const {
        double t = x1 > x0 ? (v - x0) / (x1 - x0) : 0.5;
        return px0 + t * (px1 - px0);
    }
    double y(double v) const {
        double t = y1 > y0 ? (v - y0) / (y1 - y0) : 0.5;
        return py1 - t * (py1 - py0);
    }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

void svg_header(std::ostringstream& out, int w, int h) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
        << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";
}

void svg_axes(std::ostringstream& out, const Frame& f, const std::string& xlabel,
              const std::string& ylabel) {
    out << "<line x1=\"" << fmt_double(f.px0) << "\" y1=\"" << fmt_double(f.py1) << "\" x2=\""
        << fmt_double(f.px1) << "\" y2=\"" << fmt_double(f.py1)
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n"
        << "<line x1=\"" << fmt_double(f.px0) << "\" y1=\"" << fmt_double(f.py0) << "\" x2=\""
        << fmt_double(f.px0) << "\" y2=\"" << fmt_double(f.py1)
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt_double(f.px0) << "\" y=\"" << fmt_double(f.py1 + 28)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << fmt_double(f.x0) << "</text>\n"
        << "<text x=\"" << fmt_double(f.px1 - 30) << "\" y=\"" << fmt_double(f.py1 + 28)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << fmt_double(f.x1) << "</text>\n"
        << "<text x=\"" << fmt_double(f.px0 - 44) << "\" y=\"" << fmt_double(f.py1)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << fmt_double(f.y0) << "</text>\n"
        << "<text x=\"" << fmt_double(f.px0 - 44) << "\" y=\"" << fmt_double(f.py0 + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << fmt_double(f.y1) << "</text>\n";
    out << "<text x=\"" << fmt_double((f.px0 + f.px1) / 2) << "\" y=\"" << fmt_double(f.py1 + 44)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << xlabel
        << "</text>\n"
        << "<text x=\"16\" y=\"" << fmt_double((f.py0 + f.py1) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << ylabel << "</text>\n";
}

}  // namespace

std::string csv_spectrum(const BranchSet& bs, const std::vector<int>& columns) {
    std::ostringstream out;
    out << "param,branch_index,re,im,is_real\n";
    std::vector<int> idx = columns;
    if (idx.empty())
        for (int g = 0; g < static_cast<int>(bs.param_grid.size()); ++g) idx.push_back(g);
    for (int g : idx)
        for (std::size_t b = 0; b < bs.branches.size(); ++b)
            out << fmt_double(bs.param_grid[g]) << ',' << b << ','
                << fmt_double(bs.branches[b][g].real()) << ','
                << fmt_double(bs.branches[b][g].imag()) << ',' << (bs.reality_mask[b][g] ? 1 : 0)
                << '\n';
    return out.str();
}

std::string csv_domain(const DomainMap& dm) {
    std::ostringstream out;
    out << "p1,p2,all_real\n";
    for (std::size_t i = 0; i < dm.grid1.size(); ++i)
        for (std::size_t j = 0; j < dm.grid2.size(); ++j)
            out << fmt_double(dm.grid1[i]) << ',' << fmt_double(dm.grid2[j]) << ','
                << dm.all_real[i][j] << '\n';
    return out.str();
}

std::string json_spectrum(const ModelFamily& family, const ParamPoint& fixed,
                          const std::string& free_param, const BranchSet& bs) {
    ordered_json o;
    o["schema"] = kSchema;
    o["family"] = family.name;
    o["fixed"] = point_json(fixed);
    o["free_param"] = free_param;
    o["param_grid"] = bs.param_grid;
    ordered_json branches = ordered_json::array();
    for (const auto& br : bs.branches) {
        ordered_json pts = ordered_json::array();
        for (const cplx& z : br) {
            ordered_json p;
            p["re"] = z.real();
            p["im"] = z.imag();
            pts.push_back(std::move(p));
        }
        branches.push_back(std::move(pts));
    }
    o["branches"] = std::move(branches);
    ordered_json mask = ordered_json::array();
    for (const auto& m : bs.reality_mask) {
        ordered_json row = ordered_json::array();
        for (bool v : m) row.push_back(v ? 1 : 0);
        mask.push_back(std::move(row));
    }
    o["reality_mask"] = std::move(mask);
    ordered_json events = ordered_json::array();
    for (const auto& ev : bs.merger_events) {
        ordered_json e;
        e["param_lo"] = ev.param_lo;
        e["param_hi"] = ev.param_hi;
        e["location"] = ev.location;
        e["branch_a"] = ev.branch_a;
        e["branch_b"] = ev.branch_b;
        events.push_back(std::move(e));
    }
    o["merger_events"] = std::move(events);
    o["invalid_points"] = bs.invalid_points;
    return dump(o);
}

std::string json_ep_records(const std::vector<EpRecord>& records, const std::string& status) {
    ordered_json o;
    o["schema"] = kSchema;
    o["status"] = status;
    ordered_json arr = ordered_json::array();
    for (const auto& r : records) arr.push_back(record_json(r));
    o["records"] = std::move(arr);
    return dump(o);
}

std::string json_classification(const ModelFamily& family, const ParamPoint& at,
                                const CanonicalForm& cf) {
    ordered_json o;
    o["schema"] = kSchema;
    o["family"] = family.name;
    o["at"] = point_json(at);
    ordered_json etas = ordered_json::array();
    for (const auto& es : cf.classification.eigenvalues) {
        ordered_json e;
        e["re"] = es.eta.real();
        e["im"] = es.eta.imag();
        e["alg_mult"] = es.alg_mult;
        e["block_sizes"] = es.block_sizes;
        etas.push_back(std::move(e));
    }
    o["etas"] = std::move(etas);
    o["partition"] = cf.classification.partition;
    o["K"] = cf.classification.geometric_multiplicity;
    o["defective"] = cf.classification.defective;
    ordered_json blocks = ordered_json::array();
    for (const auto& [size, eta] : cf.blocks) {
        ordered_json b;
        b["size"] = size;
        b["eta_re"] = eta.real();
        b["eta_im"] = eta.imag();
        blocks.push_back(std::move(b));
    }
    o["blocks"] = std::move(blocks);
    o["canonical_residual"] = cf.residual;
    o["canonical_status"] = cf.status;
    return dump(o);
}

std::string json_trace(const ModelFamily& family, const ParamPoint& fixed,
                       const std::string& free_param, const std::string& pinned_param,
                       const EpTrace& tr) {
    ordered_json o;
    o["schema"] = kSchema;
    o["family"] = family.name;
    o["fixed"] = point_json(fixed);
    o["free_param"] = free_param;
    o["pinned_param"] = pinned_param;
    o["pinned_grid"] = tr.pinned_grid;
    ordered_json pts = ordered_json::array();
    for (std::size_t i = 0; i < tr.per_point.size(); ++i) {
        ordered_json p;
        p["pinned_value"] = tr.pinned_grid[i];
        ordered_json recs = ordered_json::array();
        for (const auto& r : tr.per_point[i]) recs.push_back(record_json(r));
        p["records"] = std::move(recs);
        pts.push_back(std::move(p));
    }
    o["points"] = std::move(pts);
    ordered_json curves = ordered_json::array();
    for (const auto& c : tr.curves) {
        ordered_json row = ordered_json::array();
        for (double v : c) {
            if (std::isnan(v))
                row.push_back(nullptr);
            else
                row.push_back(v);
        }
        curves.push_back(std::move(row));
    }
    o["curves"] = std::move(curves);
    return dump(o);
}

std::string json_domain(const DomainMap& dm) {
    ordered_json o;
    o["schema"] = kSchema;
    o["param1"] = dm.param1;
    o["param2"] = dm.param2;
    o["grid1"] = dm.grid1;
    o["grid2"] = dm.grid2;
    o["all_real"] = dm.all_real;
    ordered_json polys = ordered_json::array();
    for (const auto& poly : dm.boundary_polylines) {
        ordered_json line = ordered_json::array();
        for (const auto& [x, y] : poly) line.push_back(ordered_json::array({x, y}));
        polys.push_back(std::move(line));
    }
    o["boundary_polylines"] = std::move(polys);
    return dump(o);
}

std::string json_charpoly(const ModelFamily& family, const ParamPoint& fixed,
                          const std::string& free_param, const BiPoly& p) {
    ordered_json o;
    o["schema"] = kSchema;
    o["family"] = family.name;
    o["fixed"] = point_json(fixed);
    o["free_param"] = free_param;
    o["vars"] = ordered_json::array({p.var_f, p.var_p});
    ordered_json rows = ordered_json::array();
    for (const auto& row : p.c) {
        ordered_json r = ordered_json::array();
        for (const Rat& q : row) r.push_back(to_string(q));
        rows.push_back(std::move(r));
    }
    o["coeffs"] = std::move(rows);
    return dump(o);
}

std::string json_cheb(int J, double w, const std::vector<double>& energies, double residual) {
    ordered_json o;
    o["schema"] = kSchema;
    o["J"] = J;
    o["w"] = w;
    o["energies"] = energies;
    o["eigensolver_residual"] = residual;
    return dump(o);
}

std::string json_error(const std::string& message) {
    ordered_json o;
    o["schema"] = kSchema;
    o["status"] = "error";
    o["message"] = message;
    return dump(o);
}

std::string svg_spectrum(const BranchSet& bs, const std::string& free_param) {
    const int W = 800, H = 600;
    Frame f{0, 1, -1, 1, 60, W - 20, 20, H - 60};
    if (!bs.param_grid.empty()) {
        f.x0 = bs.param_grid.front();
        f.x1 = bs.param_grid.back();
    }
    double ylo = 1e300, yhi = -1e300;
    for (const auto& br : bs.branches)
        for (const cplx& z : br) {
            ylo = std::min(ylo, z.real());
            yhi = std::max(yhi, z.real());
        }
    if (ylo > yhi) {
        ylo = -1;
        yhi = 1;
    }
    double pad = (yhi - ylo) * 0.05 + 1e-12;
    f.y0 = ylo - pad;
    f.y1 = yhi + pad;

    std::ostringstream out;
    svg_header(out, W, H);
    svg_axes(out, f, free_param, "Re E");
    const int G = static_cast<int>(bs.param_grid.size());
    for (std::size_t b = 0; b < bs.branches.size(); ++b) {
        const char* color = kPalette[b % (sizeof(kPalette) / sizeof(kPalette[0]))];
        int start = 0;
        while (start < G) {
            bool real_run = bs.reality_mask[b][start];
            int end = start;
            while (end + 1 < G && bs.reality_mask[b][end + 1] == real_run) ++end;
            // extend one point so consecutive runs join without a gap
            int last = std::min(end + 1, G - 1);
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
            if (!real_run) out << " stroke-dasharray=\"6 4\"";
            out << " points=\"";
            for (int g = start; g <= last; ++g) {
                if (g > start) out << ' ';
                out << fmt_double(f.x(bs.param_grid[g])) << ','
                    << fmt_double(f.y(bs.branches[b][g].real()));
            }
            out << "\"/>\n";
            start = end + 1;
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_domain(const DomainMap& dm) {
    const int W = 800, H = 600;
    Frame f{0, 1, 0, 1, 60, W - 20, 20, H - 60};
    if (!dm.grid1.empty()) {
        f.x0 = dm.grid1.front();
        f.x1 = dm.grid1.back();
    }
    if (!dm.grid2.empty()) {
        f.y0 = dm.grid2.front();
        f.y1 = dm.grid2.back();
    }
    std::ostringstream out;
    svg_header(out, W, H);
    const int n1 = static_cast<int>(dm.grid1.size());
    const int n2 = static_cast<int>(dm.grid2.size());
    for (int i = 0; i + 1 < n1; ++i)
        for (int j = 0; j + 1 < n2; ++j) {
            if (dm.all_real[i][j] == 1 && dm.all_real[i + 1][j] == 1 &&
                dm.all_real[i][j + 1] == 1 && dm.all_real[i + 1][j + 1] == 1) {
                double x = f.x(dm.grid1[i]);
                double y = f.y(dm.grid2[j + 1]);
                double wpx = f.x(dm.grid1[i + 1]) - x;
                double hpx = f.y(dm.grid2[j]) - y;
                out << "<rect x=\"" << fmt_double(x) << "\" y=\"" << fmt_double(y) << "\" width=\""
                    << fmt_double(wpx) << "\" height=\"" << fmt_double(hpx)
                    << "\" fill=\"#9ecae1\"/>\n";
            }
        }
    for (const auto& poly : dm.boundary_polylines) {
        out << "<path fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" d=\"";
        for (std::size_t k = 0; k < poly.size(); ++k)
            out << (k == 0 ? "M" : " L") << fmt_double(f.x(poly[k].first)) << ' '
                << fmt_double(f.y(poly[k].second));
        out << "\"/>\n";
    }
    svg_axes(out, f, dm.param1, dm.param2);
    out << "</svg>\n";
    return out.str();
}

}  // namespace epcat
