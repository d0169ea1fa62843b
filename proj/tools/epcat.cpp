#include <algorithm>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "epcat/ep.hpp"
#include "epcat/errors.hpp"
#include "epcat/flow.hpp"
#include "epcat/io.hpp"
#include "epcat/models.hpp"
#include "epcat/tolerances.hpp"

namespace {

using namespace epcat;

struct SweepSpec {
    std::string name;
    double lo = 0, hi = 0;
    int count = 0;
};

[[noreturn]] void usage_fail(const std::string& flag, const std::string& msg) {
    throw CLI::ValidationError(flag, msg);
}

double parse_number(const std::string& flag, const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) usage_fail(flag, "trailing characters in number '" + text + "'");
        return v;
    } catch (const std::invalid_argument&) {
        usage_fail(flag, "expected a number, got '" + text + "'");
    } catch (const std::out_of_range&) {
        usage_fail(flag, "number out of range: '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

SweepSpec parse_sweep(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        usage_fail("--sweep", "expected name=lo:hi:count, got '" + text + "'");
    SweepSpec sp;
    sp.name = text.substr(0, eq);
    auto parts = split(text.substr(eq + 1), ':');
    if (parts.size() != 3) usage_fail("--sweep", "expected name=lo:hi:count, got '" + text + "'");
    sp.lo = parse_number("--sweep", parts[0]);
    sp.hi = parse_number("--sweep", parts[1]);
    sp.count = static_cast<int>(parse_number("--sweep", parts[2]));
    if (sp.count < 1) usage_fail("--sweep", "count must be >= 1");
    if (sp.hi < sp.lo) usage_fail("--sweep", "need lo <= hi");
    if (sp.count == 1 && sp.hi != sp.lo) usage_fail("--sweep", "count 1 needs lo == hi");
    return sp;
}

std::pair<double, double> parse_lohi(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.size() != 2) usage_fail("--range", "expected lo:hi, got '" + text + "'");
    double lo = parse_number("--range", parts[0]);
    double hi = parse_number("--range", parts[1]);
    if (hi < lo) usage_fail("--range", "need lo <= hi");
    return {lo, hi};
}

ParamPoint parse_point(const std::vector<std::string>& entries, const std::string& flag) {
    ParamPoint p;
    for (const auto& entry : entries)
        for (const auto& item : split(entry, ',')) {
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                usage_fail(flag, "expected name=value, got '" + item + "'");
            try {
                p[item.substr(0, eq)] = parse_param_value(item.substr(eq + 1));
            } catch (const EpcatError& e) {
                usage_fail(flag, e.what());
            }
        }
    return p;
}

std::vector<std::pair<int, cplx>> parse_blocks(const std::string& text) {
    std::vector<std::pair<int, cplx>> blocks;
    for (const auto& item : split(text, ',')) {
        auto parts = split(item, ':');
        if (parts.size() != 2 && parts.size() != 3)
            usage_fail("--blocks", "expected size:re or size:re:im, got '" + item + "'");
        int size = static_cast<int>(parse_number("--blocks", parts[0]));
        if (size < 1) usage_fail("--blocks", "block size must be >= 1");
        double re = parse_number("--blocks", parts[1]);
        double im = parts.size() == 3 ? parse_number("--blocks", parts[2]) : 0.0;
        blocks.emplace_back(size, cplx(re, im));
    }
    if (blocks.empty()) usage_fail("--blocks", "at least one block is required");
    return blocks;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = count == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(count - 1);
    return g;
}

void write_artifact(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw EpcatError("cannot open output file " + path);
    out << content;
    if (!out) throw EpcatError("short write to " + path);
}

/// Common family-selection flags; construction errors count as usage errors.
struct FamilyArgs {
    std::string model;
    int dim = 0;
    std::string blocks_text;

    ModelFamily make() const {
        std::vector<std::pair<int, cplx>> blocks;
        if (!blocks_text.empty()) blocks = parse_blocks(blocks_text);
        if (model == "jordan" && blocks.empty())
            usage_fail("--blocks", "the jordan family needs --blocks");
        try {
            return make_family(model, dim, blocks);
        } catch (const EpcatError& e) {
            usage_fail("--model", e.what());
        }
    }
};

void add_family_flags(CLI::App* cmd, FamilyArgs& fa) {
    cmd->add_option("--model", fa.model, "family name: latti, mytoy, h6, ha6, jordan")
        ->required();
    cmd->add_option("--dim", fa.dim, "matrix dimension for latti / mytoy");
    cmd->add_option("--blocks", fa.blocks_text, "jordan blocks as size:re[:im],...");
}

BranchSet first_column(const BranchSet& bs) {
    BranchSet one;
    one.param_grid = {bs.param_grid.front()};
    for (const auto& br : bs.branches) one.branches.push_back({br.front()});
    for (const auto& m : bs.reality_mask) one.reality_mask.push_back({m.front()});
    return one;
}

int cmd_spectrum(const FamilyArgs& fa, const std::vector<std::string>& fix,
                 const std::string& sweep_text, const std::string& format,
                 const std::string& out) {
    ModelFamily family = fa.make();
    ParamPoint fixed = parse_point(fix, "--fix");
    SweepSpec sp = parse_sweep(sweep_text);
    bool single = sp.count == 1;
    std::vector<double> grid = single ? std::vector<double>{sp.lo, sp.lo}
                                      : linspace(sp.lo, sp.hi, sp.count);
    BranchSet bs;
    try {
        bs = sweep(family, fixed, sp.name, grid);
    } catch (const NonConvergence& e) {
        std::cerr << "epcat: numeric failure in sweep " << sp.name << "=" << sp.lo << ":" << sp.hi
                  << ": " << e.what() << "\n";
        return 3;
    }
    if (single) bs = first_column(bs);
    std::string artifact;
    if (format == "csv")
        artifact = csv_spectrum(bs);
    else if (format == "json")
        artifact = json_spectrum(family, fixed, sp.name, bs);
    else if (format == "svg")
        artifact = svg_spectrum(bs, sp.name);
    else
        usage_fail("--format", "spectrum supports csv, json, svg");
    write_artifact(out, artifact);
    return 0;
}

int cmd_ep_find(const FamilyArgs& fa, const std::vector<std::string>& fix,
                const std::string& param, const std::string& range_text, int grid,
                const std::string& format, const std::string& out) {
    if (format != "json") usage_fail("--format", "ep output is json only");
    ModelFamily family = fa.make();
    ParamPoint fixed = parse_point(fix, "--fix");
    FindOptions opt;
    std::tie(opt.lo, opt.hi) = parse_lohi(range_text);
    if (grid > 0) opt.grid = grid;
    try {
        write_artifact(out, json_ep_records(find_eps(family, fixed, param, opt)));
    } catch (const BadParamPoint&) {
        throw;
    } catch (const NonConvergence& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        write_artifact(out, json_ep_records({}, "partial"));
        return 3;
    } catch (const EpcatError& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        write_artifact(out, json_error(e.what()));
        return 3;
    }
    return 0;
}

int cmd_ep_classify(const FamilyArgs& fa, const std::vector<std::string>& at,
                    const std::string& format, const std::string& out) {
    if (format != "json") usage_fail("--format", "ep output is json only");
    ModelFamily family = fa.make();
    ParamPoint point = parse_point(at, "--at");
    CMatrix H = family.builder(point);
    try {
        write_artifact(out, json_classification(family, point, canonical_form(H)));
    } catch (const NonConvergence& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        write_artifact(out, json_error(e.what()));
        return 3;
    } catch (const AmbiguousClustering& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        write_artifact(out, json_error(e.what()));
        return 3;
    }
    return 0;
}

int cmd_ep_trace(const FamilyArgs& fa, const std::vector<std::string>& fix,
                 const std::string& param, const std::string& range_text,
                 const std::string& sweep_text, int grid, const std::string& format,
                 const std::string& out) {
    if (format != "json") usage_fail("--format", "ep output is json only");
    ModelFamily family = fa.make();
    ParamPoint fixed = parse_point(fix, "--fix");
    SweepSpec pin = parse_sweep(sweep_text);
    FindOptions opt;
    std::tie(opt.lo, opt.hi) = parse_lohi(range_text);
    if (grid > 0) opt.grid = grid;
    std::vector<double> pins = linspace(pin.lo, pin.hi, pin.count);
    try {
        EpTrace tr = trace_ep_curve(family, fixed, param, pin.name, pins, opt);
        write_artifact(out, json_trace(family, fixed, param, pin.name, tr));
    } catch (const BadParamPoint&) {
        throw;
    } catch (const NonConvergence& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        write_artifact(out, json_ep_records({}, "partial"));
        return 3;
    } catch (const EpcatError& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        write_artifact(out, json_error(e.what()));
        return 3;
    }
    return 0;
}

int cmd_domain(const FamilyArgs& fa, const std::vector<std::string>& sweeps,
               const std::string& format, const std::string& out) {
    if (sweeps.size() != 2) usage_fail("--sweep", "domain needs exactly two --sweep flags");
    ModelFamily family = fa.make();
    SweepSpec a = parse_sweep(sweeps[0]);
    SweepSpec b = parse_sweep(sweeps[1]);
    if (family.param_names.size() != 2)
        usage_fail("--model", "domain needs a two-parameter family, " + family.name + " has " +
                                  std::to_string(family.param_names.size()));
    if (a.name == b.name) usage_fail("--sweep", "the two sweeps must name distinct parameters");
    if (a.name != family.param_names[0]) std::swap(a, b);
    if (a.name != family.param_names[0] || b.name != family.param_names[1])
        usage_fail("--sweep", "sweep names must match the family parameters " +
                                  family.param_names[0] + ", " + family.param_names[1]);
    DomainMap dm;
    try {
        dm = domain_map(family, linspace(a.lo, a.hi, a.count), linspace(b.lo, b.hi, b.count));
    } catch (const NonConvergence& e) {
        std::cerr << "epcat: numeric failure in domain map: " << e.what() << "\n";
        return 3;
    }
    std::string artifact;
    if (format == "csv")
        artifact = csv_domain(dm);
    else if (format == "json")
        artifact = json_domain(dm);
    else if (format == "svg")
        artifact = svg_domain(dm);
    else
        usage_fail("--format", "domain supports csv, json, svg");
    write_artifact(out, artifact);
    return 0;
}

int cmd_charpoly(const FamilyArgs& fa, const std::vector<std::string>& fix,
                 const std::string& free, const std::string& format, const std::string& out) {
    if (format != "json") usage_fail("--format", "charpoly output is json only");
    ModelFamily family = fa.make();
    ParamPoint fixed = parse_point(fix, "--fix");
    BiPoly p = symbolic_char_poly(family, fixed, free);
    p.trim();
    write_artifact(out, json_charpoly(family, fixed, free, p));
    return 0;
}

int cmd_cheb(int J, double w, const std::string& format, const std::string& out) {
    if (format != "json") usage_fail("--format", "cheb output is json only");
    std::vector<double> energies = cheb_spectrum(J, w);
    std::vector<double> eig;
    for (const cplx& z : eigen(build_mytoy(J, w)).eigenvalues) eig.push_back(z.real());
    std::sort(eig.begin(), eig.end());
    double residual = 0;
    for (std::size_t k = 0; k < energies.size(); ++k)
        residual = std::max(residual, std::abs(energies[k] - eig[k]));
    write_artifact(out, json_cheb(J, w, energies, residual));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    epcat::load_env_overrides();

    CLI::App app{"exceptional-point toolkit for parametric matrix families"};
    app.require_subcommand(1);

    FamilyArgs fa_spectrum, fa_find, fa_classify, fa_trace, fa_domain, fa_charpoly;
    std::vector<std::string> fix, at, domain_sweeps;
    std::string sweep_text, range_text, param, free_param, out = "-";
    std::string format_spectrum = "csv", format_domain = "csv", format_json = "json";
    int grid = 0, cheb_J = 1;
    double cheb_w = 0;
    int rc = 0;

    auto* sp = app.add_subcommand("spectrum", "eigenvalue branches along a parameter sweep");
    add_family_flags(sp, fa_spectrum);
    sp->add_option("--fix", fix, "pinned parameters name=value[,name=value]");
    sp->add_option("--sweep", sweep_text, "swept parameter as name=lo:hi:count")->required();
    sp->add_option("--format", format_spectrum, "csv, json, or svg");
    sp->add_option("--out", out, "output file, - for stdout");
    sp->callback([&] { rc = cmd_spectrum(fa_spectrum, fix, sweep_text, format_spectrum, out); });

    auto* ep = app.add_subcommand("ep", "exceptional-point search and classification");
    ep->require_subcommand(1);

    auto* find = ep->add_subcommand("find", "locate EPs of a one-parameter slice");
    add_family_flags(find, fa_find);
    find->add_option("--fix", fix, "pinned parameters name=value[,name=value]");
    find->add_option("--param", param, "parameter to search over")->required();
    find->add_option("--range", range_text, "search interval lo:hi")->required();
    find->add_option("--grid", grid, "scan resolution for the numeric fallback");
    find->add_option("--format", format_json, "json");
    find->add_option("--out", out, "output file, - for stdout");
    find->callback(
        [&] { rc = cmd_ep_find(fa_find, fix, param, range_text, grid, format_json, out); });

    auto* classify = ep->add_subcommand("classify", "Jordan structure at one parameter point");
    add_family_flags(classify, fa_classify);
    classify->add_option("--at", at, "parameter point name=value[,name=value]");
    classify->add_option("--format", format_json, "json");
    classify->add_option("--out", out, "output file, - for stdout");
    classify->callback([&] { rc = cmd_ep_classify(fa_classify, at, format_json, out); });

    auto* trace = ep->add_subcommand("trace", "EP locations along a pinned second parameter");
    add_family_flags(trace, fa_trace);
    trace->add_option("--fix", fix, "pinned parameters name=value[,name=value]");
    trace->add_option("--param", param, "parameter to search over")->required();
    trace->add_option("--range", range_text, "search interval lo:hi")->required();
    trace->add_option("--sweep", sweep_text, "pinned parameter as name=lo:hi:count")->required();
    trace->add_option("--grid", grid, "scan resolution for the numeric fallback");
    trace->add_option("--format", format_json, "json");
    trace->add_option("--out", out, "output file, - for stdout");
    trace->callback([&] {
        rc = cmd_ep_trace(fa_trace, fix, param, range_text, sweep_text, grid, format_json, out);
    });

    auto* dom = app.add_subcommand("domain", "all-real region of a two-parameter family");
    add_family_flags(dom, fa_domain);
    dom->add_option("--sweep", domain_sweeps, "two sweeps, one per parameter")->expected(2);
    dom->add_option("--format", format_domain, "csv, json, or svg");
    dom->add_option("--out", out, "output file, - for stdout");
    dom->callback([&] { rc = cmd_domain(fa_domain, domain_sweeps, format_domain, out); });

    auto* cp = app.add_subcommand("charpoly", "exact characteristic polynomial table");
    add_family_flags(cp, fa_charpoly);
    cp->add_option("--fix", fix, "pinned parameters name=value[,name=value]");
    cp->add_option("--free", free_param, "parameter kept symbolic")->required();
    cp->add_option("--format", format_json, "json");
    cp->add_option("--out", out, "output file, - for stdout");
    cp->callback([&] { rc = cmd_charpoly(fa_charpoly, fix, free_param, format_json, out); });

    auto* cb = app.add_subcommand("cheb", "balanced-chain spectrum via the Chebyshev closure");
    cb->add_option("--J", cheb_J, "chain half-length, dimension is 2J+2")
        ->required()
        ->check(CLI::PositiveNumber);
    cb->add_option("--w", cheb_w, "coupling, |w| <= 1")->required();
    cb->add_option("--format", format_json, "json");
    cb->add_option("--out", out, "output file, - for stdout");
    cb->callback([&] { rc = cmd_cheb(cheb_J, cheb_w, format_json, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const epcat::NotPolynomialInParam& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        return 2;
    } catch (const epcat::WOutOfRange& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        return 2;
    } catch (const epcat::BadParamPoint& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        return 2;
    } catch (const epcat::OddDimension& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        return 2;
    } catch (const epcat::LambdaOutOfRange& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        return 2;
    } catch (const epcat::UnknownModel& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        return 2;
    } catch (const epcat::EpcatError& e) {
        std::cerr << "epcat: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
