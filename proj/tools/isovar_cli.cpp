// isovar: build, check, count and export isovariant simplicial sets.
//
// Exit codes: 0 the command ran and printed its verdict, 1 usage error,
// 2 invalid input, 3 a verification failed.

#include <CLI11.hpp>

#include <isovar/io.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace isovar;

namespace {

constexpr int kOk = 0, kUsage = 1, kInvalid = 2, kFailed = 3;

struct Options {
    bool json_out = false;
    unsigned seed = 20261015;
    int max_n = 6;
};

int max_n_from_env() {
    const char* v = std::getenv("ISOSET_MAX_N");
    if (!v || !*v) return 6;
    try {
        std::size_t used = 0;
        const int n = std::stoi(v, &used);
        if (used == std::string(v).size() && n >= 0) return n;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidInput, std::string("ISOSET_MAX_N is not a non-negative integer: ") + v);
}

void require_n(const Options& o, int n) {
    if (n > o.max_n)
        throw Error(ErrorKind::InvalidInput,
                    "n = " + std::to_string(n) + " exceeds ISOSET_MAX_N = " + std::to_string(o.max_n));
}

SimplexObject object_arg(const Options& o, int n, int k) {
    const SimplexObject ob{n, k};
    if (!ob.valid()) throw Error(ErrorKind::InvalidObject, "no object [" + std::to_string(n) + "]_" + std::to_string(k));
    require_n(o, n);
    return ob;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SSetPtr read_sset(const Options& o, const std::string& path) {
    auto X = parse_sset(read_input(path));
    require_n(o, std::max(X->max_dim(), 0));
    return X;
}

std::string images_str(const GDeltaMap& f) {
    std::string s = "(";
    for (int j = 0; j <= f.src().n; ++j) s += (j ? " " : "") + vertex_name(f.tgt(), f.image(j));
    return s + ")";
}

std::string mark(bool b) { return b ? "ok" : "FAIL"; }

// ---------------------------------------------------------------------------

int cmd_hom(const Options& o, std::ostream& out, const std::string& src, const std::string& tgt, bool list) {
    const SimplexObject a = parse_degree(src), b = parse_degree(tgt);
    require_n(o, std::max(a.n, b.n));
    const auto maps = enumerate_hom(a, b);
    if (o.json_out) {
        json doc{{"src", src}, {"tgt", tgt}, {"count", maps.size()}};
        if (list) {
            json arr = json::array();
            for (const auto& f : maps) arr.push_back(gdelta_json(f)["images"]);
            doc["maps"] = arr;
        }
        out << doc.dump(2) << "\n";
        return kOk;
    }
    if (!list) {
        out << maps.size() << "\n";
        return kOk;
    }
    for (const auto& f : maps) out << images_str(f) << "\n";
    return kOk;
}

int cmd_decompose(const Options& o, std::ostream& out, const std::string& file) {
    const GDeltaMap f = gdelta_from_json(parse_json(read_input(file)));
    require_n(o, std::max(f.src().n, f.tgt().n));
    const Decomposition d = decompose(f);
    const bool round_trip = d.recompose() == f;
    json codeg = json::array(), cof = json::array();
    for (const auto& g : d.codegeneracies) codeg.push_back(g.name());
    for (const auto& g : d.cofaces) cof.push_back(g.name());
    if (o.json_out) {
        out << json{{"codegeneracies", codeg}, {"cofaces", cof}, {"swap", d.swap}, {"round_trip", round_trip}}.dump(2)
            << "\n";
    } else {
        auto join = [](const json& a) {
            std::string s;
            for (const auto& x : a) s += (s.empty() ? "" : " ") + x.get<std::string>();
            return s.empty() ? std::string("(none)") : s;
        };
        out << "codegeneracies: " << join(codeg) << "\n";
        out << "cofaces: " << join(cof) << "\n";
        out << "swap: " << (d.swap ? "yes" : "no") << "\n";
        out << "round trip: " << mark(round_trip) << "\n";
    }
    return round_trip ? kOk : kFailed;
}

int cmd_relations(const Options& o, std::ostream& out, int max_n) {
    require_n(o, max_n);
    const RelationReport rep = check_cosimplicial_relations(max_n);
    const int fails = rep.failures();
    if (o.json_out) {
        json bad = json::array();
        for (const auto& r : rep.instances)
            if (!r.pass) bad.push_back({{"family", r.family}, {"instance", r.description}});
        out << json{{"max_n", max_n}, {"instances", rep.instances.size()}, {"failures", bad}}.dump(2) << "\n";
    } else if (fails == 0) {
        out << "all " << rep.instances.size() << " instances pass\n";
    } else {
        for (const auto& r : rep.instances)
            if (!r.pass) out << "FAIL " << r.family << ": " << r.description << "\n";
        out << fails << " of " << rep.instances.size() << " instances fail\n";
    }
    return fails == 0 ? kOk : kFailed;
}

int cmd_build(const Options& o, std::ostream& out, const std::vector<std::string>& args) {
    if (args.empty()) throw CLI::ValidationError("build", "needs an object kind");
    const std::string& kind = args[0];
    auto ints = [&](std::size_t count) {
        if (args.size() != count + 1)
            throw CLI::ValidationError("build", kind + " takes " + std::to_string(count) + " integer arguments");
        std::vector<int> v;
        for (std::size_t i = 1; i <= count; ++i) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoi(args[i], &used));
                if (used != args[i].size()) throw std::invalid_argument(args[i]);
            } catch (const std::exception&) {
                throw Error(ErrorKind::InvalidInput, "not an integer: " + args[i]);
            }
        }
        return v;
    };
    std::string provenance;
    for (const auto& a : args) provenance += (provenance.empty() ? "" : " ") + a;
    SSetPtr X;
    if (kind == "delta" || kind == "boundary" || kind == "interval") {
        const auto v = ints(2);
        object_arg(o, v[0], v[1]);
        if (kind == "delta") X = representable(v[0], v[1]).object();
        if (kind == "boundary") X = sub_object(representable(v[0], v[1]).object(), boundary(v[0], v[1]));
        if (kind == "interval") X = interval_of_representable(v[0], v[1]);
    } else if (kind == "horn") {
        const auto v = ints(3);
        object_arg(o, v[0], v[1]);
        require_horn_index(v[0], v[1], v[2]);
        X = sub_object(representable(v[0], v[1]).object(), horn(v[0], v[1], v[2]));
    } else if (kind == "cylinder") {
        if (args.size() != 2) throw CLI::ValidationError("build", "cylinder takes one file");
        X = cylinder(read_sset(o, args[1])).total;
        provenance = "cylinder";
    } else {
        throw CLI::ValidationError("build", "unknown object kind " + kind);
    }
    out << serialize(*X, provenance);
    return kOk;
}

int cmd_check_admissible(const Options& o, std::ostream& out, int n, int k, int l) {
    object_arg(o, n, k);
    const bool closed = is_admissible(n, k, l);
    const bool searched = is_admissible_by_definition(n, k, l);
    if (o.json_out)
        out << json{{"n", n}, {"k", k}, {"l", l}, {"admissible", closed}, {"agrees_with_definition", closed == searched}}
                   .dump(2)
            << "\n";
    else
        out << (closed ? "admissible" : "non-admissible") << "\n";
    if (closed != searched) {
        std::cerr << "closed form and definitional search disagree\n";
        return kFailed;
    }
    return kOk;
}

int cmd_check_normal(const Options& o, std::ostream& out, const std::string& file) {
    const auto X = read_sset(o, file);
    const bool normal = is_normal(*X);
    if (o.json_out)
        out << json{{"normal", normal}}.dump(2) << "\n";
    else
        out << (normal ? "normal" : "not normal") << "\n";
    return kOk;
}

int cmd_check_exactness(const Options& o, std::ostream& out, const std::string& fx, const std::string& fy) {
    const auto X = read_sset(o, fx), Y = read_sset(o, fy);
    MapSearchOptions opt;
    opt.injective = true;
    const auto iota = find_map(X, Y, opt);
    if (!iota) throw Error(ErrorKind::InvalidInput, "the first object does not embed in the second");
    const CylinderBundle IX = cylinder(X), IY = cylinder(Y);
    const ExactnessReport r = verify_exactness(*iota, IX, IY);
    if (o.json_out) {
        out << json{{"section_law", r.section_law},
                    {"ends_disjoint", r.ends_disjoint},
                    {"mono", r.mono},
                    {"natural", r.natural},
                    {"pullback", {r.pullback[0], r.pullback[1]}},
                    {"problems", r.problems}}
                   .dump(2)
            << "\n";
    } else {
        out << "section law: " << mark(r.section_law) << "\n";
        out << "ends disjoint: " << mark(r.ends_disjoint) << "\n";
        out << "cylinder of the mono is mono: " << mark(r.mono) << "\n";
        out << "natural: " << mark(r.natural) << "\n";
        out << "pullback at end 0: " << mark(r.pullback[0]) << "\n";
        out << "pullback at end 1: " << mark(r.pullback[1]) << "\n";
        for (const auto& p : r.problems) out << "  " << p << "\n";
    }
    return r.ok() ? kOk : kFailed;
}

int cmd_check_saturation(const Options& o, std::ostream& out, int n, int k, int eps) {
    object_arg(o, n, k);
    if (eps != 0 && eps != 1) throw Error(ErrorKind::InvalidInput, "eps is 0 or 1");
    const FiltrationReport rep = verify_filtration(build_filtration(n, k, eps));
    if (o.json_out) {
        json stages = json::array();
        for (const auto& s : rep.stages)
            stages.push_back({{"i", s.i},
                              {"attached", degree_str(s.attached_degree)},
                              {"horn", s.horn_index},
                              {"admissible", s.admissible},
                              {"pushout", s.pushout},
                              {"levelwise", s.levelwise},
                              {"ok", s.ok()},
                              {"problems", s.problems}});
        out << json{{"n", n}, {"k", k}, {"eps", eps}, {"stages", stages}, {"increasing", rep.increasing},
                    {"ends_full", rep.ends_full}, {"ok", rep.ok()}}
                   .dump(2)
            << "\n";
    } else {
        for (const auto& s : rep.stages) {
            out << "stage " << s.i << ": attach " << degree_str(s.attached_degree) << " along horn "
                << horn_label(s.attached_degree.n, s.attached_degree.k, s.horn_index) << " "
                << (s.admissible ? "admissible" : "non-admissible") << ", pushout " << mark(s.pushout)
                << ", counts " << mark(s.levelwise) << "\n";
            for (const auto& p : s.problems) out << "  " << p << "\n";
        }
        out << "increasing: " << mark(rep.increasing) << ", ends at the full cylinder: " << mark(rep.ends_full) << "\n";
        out << (rep.ok() ? "all stages pass" : "filtration FAILED") << "\n";
    }
    return rep.ok() ? kOk : kFailed;
}

int cmd_check_retract(const Options& o, std::ostream& out, int n, int k, int l) {
    object_arg(o, n, k);
    require_horn_index(n, k, l);
    if (!is_admissible(n, k, l)) {
        if (o.json_out)
            out << json{{"admissible", false}}.dump(2) << "\n";
        else
            out << "non-admissible: no retract witness\n";
        return kOk;
    }
    const RetractWitness w = retract_witness(n, k, l);
    const RetractReport r = check_retract(w);
    if (o.json_out) {
        out << json{{"admissible", true}, {"source", w.source}, {"eps", w.eps}, {"section", r.section},
                    {"q_contained", r.q_contained}, {"r_contained", r.r_contained}, {"diagram", r.diagram},
                    {"ok", r.ok()}}
                   .dump(2)
            << "\n";
    } else {
        out << "witness from " << w.source << ", end " << w.eps << "\n";
        out << "r o q = id: " << mark(r.section) << "\n";
        out << "q lands in the middle term: " << mark(r.q_contained) << "\n";
        out << "r lands in the horn: " << mark(r.r_contained) << "\n";
        out << "diagram commutes: " << mark(r.diagram) << "\n";
        for (const auto& p : r.problems) out << "  " << p << "\n";
        out << (r.ok() ? "witness verified" : "witness FAILED") << "\n";
    }
    return r.ok() ? kOk : kFailed;
}

int cmd_check_homotopy_equiv(const Options& o, std::ostream& out, const std::string& file, int depth) {
    const PresheafMap f = presheaf_map_from_json(parse_json(read_input(file)));
    require_n(o, std::max({f.src->max_dim(), f.tgt->max_dim(), 0}));
    if (depth < 1) throw Error(ErrorKind::InvalidInput, "depth is at least 1");
    const auto w = is_elementary_homotopy_equivalence(f, depth);
    if (w && !check_equivalence_witness(f, *w)) {
        std::cerr << "search returned a witness that does not check\n";
        return kFailed;
    }
    if (o.json_out) {
        json doc{{"equivalence", w.has_value()}, {"depth", depth}};
        if (w) {
            doc["inverse"] = presheaf_map_json(w->inverse);
            json a = json::array(), b = json::array();
            for (const auto& H : w->on_source) a.push_back(homotopy_json(H));
            for (const auto& H : w->on_target) b.push_back(homotopy_json(H));
            doc["on_source"] = a;
            doc["on_target"] = b;
        }
        out << doc.dump(2) << "\n";
    } else if (w) {
        out << "elementary homotopy equivalence (" << w->on_source.size() << " + " << w->on_target.size()
            << " homotopies)\n";
    } else {
        out << "no elementary homotopy inverse within depth " << depth << "\n";
    }
    return kOk;
}

// Subobjects of representables sampled with the given seed; all must be normal.
int cmd_check_normal_samples(const Options& o, std::ostream& out, int samples, int max_n) {
    require_n(o, max_n);
    if (samples < 0 || max_n < 1) throw Error(ErrorKind::InvalidInput, "samples >= 0 and max-n >= 1");
    std::mt19937 rng(o.seed);
    int normal = 0;
    for (int s = 0; s < samples; ++s) {
        const int n = 1 + static_cast<int>(rng() % max_n);
        const int k = static_cast<int>(rng() % (n + 2));
        const auto X = representable(n, k).object();
        std::vector<int> seeds;
        for (int c = 0; c < X->size(); ++c)
            if (rng() % 4 == 0) seeds.push_back(c);
        const Materialized M = materialize(X, closure(*X, seeds));
        normal += is_normal(*M.object) && is_normal_mono(M.inclusion);
    }
    if (o.json_out)
        out << json{{"seed", o.seed}, {"samples", samples}, {"normal", normal}}.dump(2) << "\n";
    else
        out << normal << " of " << samples << " sampled subobjects are normal (seed " << o.seed << ")\n";
    return normal == samples ? kOk : kFailed;
}

int cmd_export(const Options& o, std::ostream& out, const std::string& file, const std::string& format) {
    const Mesh M = realize(*read_sset(o, file));
    if (format == "off")
        out << export_off(M, &std::cerr);
    else if (format == "obj")
        out << export_obj(M, &std::cerr);
    else
        out << mesh_json(M).dump(2) << "\n";
    return kOk;
}

int cmd_euler(const Options& o, std::ostream& out, const std::string& file) {
    const Mesh M = realize(*read_sset(o, file));
    const long chi = euler_characteristic(M);
    if (o.json_out)
        out << json{{"euler", chi}, {"census", M.census()}}.dump(2) << "\n";
    else
        out << chi << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isovariant simplicial sets: build, check, count and export"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.json_out, "Machine-readable output");
    app.add_option("--seed", opt.seed, "Seed for sampled checks");
    std::string out_path;
    app.add_option("-o,--output", out_path, "Write to a file instead of stdout");

    std::function<int()> action;

    auto* hom = app.add_subcommand("hom", "Count or list maps between two objects");
    std::string hom_src, hom_tgt;
    bool list = false, count = false;
    hom->add_option("src", hom_src, "Source degree n,k")->required();
    hom->add_option("tgt", hom_tgt, "Target degree n,k")->required();
    auto* list_flag = hom->add_flag("--list", list);
    hom->add_flag("--count", count)->excludes(list_flag);
    hom->callback([&] { action = [&] { return cmd_hom(opt, std::cout, hom_src, hom_tgt, list); }; });

    auto* dec = app.add_subcommand("decompose", "Factor a map into codegeneracies, cofaces and a swap");
    std::string dec_file;
    dec->add_option("map", dec_file, "Map document")->required();
    dec->callback([&] { action = [&] { return cmd_decompose(opt, std::cout, dec_file); }; });

    auto* rel = app.add_subcommand("relations", "Check the isovariant cosimplicial relations");
    int rel_n = 3;
    rel->add_option("--max-n", rel_n, "Largest n")->check(CLI::NonNegativeNumber);
    rel->callback([&] { action = [&] { return cmd_relations(opt, std::cout, rel_n); }; });

    auto* build = app.add_subcommand("build", "Emit a document: delta|boundary|interval n k, horn n k l, cylinder FILE");
    std::vector<std::string> build_args;
    build->add_option("object", build_args, "Object kind and arguments")->required();
    build->callback([&] { action = [&] { return cmd_build(opt, std::cout, build_args); }; });

    auto* check = app.add_subcommand("check", "Verify a claim");
    check->require_subcommand(1);
    check->fallthrough();
    int cn = 0, ck = 0, cl = 0;
    auto add_nk = [&](CLI::App* sc) {
        sc->add_option("n", cn)->required();
        sc->add_option("k", ck)->required();
    };
    auto* adm = check->add_subcommand("admissible", "Is the horn admissible");
    add_nk(adm);
    adm->add_option("l", cl)->required();
    adm->callback([&] { action = [&] { return cmd_check_admissible(opt, std::cout, cn, ck, cl); }; });

    std::string file_a, file_b;
    auto* normal = check->add_subcommand("normal", "Does sigma act freely on the free simplices");
    normal->add_option("file", file_a)->required();
    normal->callback([&] { action = [&] { return cmd_check_normal(opt, std::cout, file_a); }; });

    auto* exact = check->add_subcommand("exactness", "Cylinder exactness along an embedding X -> Y");
    exact->add_option("x", file_a)->required();
    exact->add_option("y", file_b)->required();
    exact->callback([&] { action = [&] { return cmd_check_exactness(opt, std::cout, file_a, file_b); }; });

    auto* sat = check->add_subcommand("saturation", "Filtration of the cylinder over the boundary");
    add_nk(sat);
    int sat_eps = 1;
    sat->add_option("--eps", sat_eps, "End the filtration starts from");
    sat->callback([&] { action = [&] { return cmd_check_saturation(opt, std::cout, cn, ck, sat_eps); }; });

    auto* ret = check->add_subcommand("retract", "Horn inclusion as a retract of a pushout-product");
    add_nk(ret);
    ret->add_option("l", cl)->required();
    ret->callback([&] { action = [&] { return cmd_check_retract(opt, std::cout, cn, ck, cl); }; });

    auto* heq = check->add_subcommand("homotopy-equiv", "Search an elementary homotopy inverse");
    int depth = 1;
    heq->add_option("map", file_a)->required();
    heq->add_option("--depth", depth, "Longest zigzag of elementary homotopies");
    heq->callback([&] { action = [&] { return cmd_check_homotopy_equiv(opt, std::cout, file_a, depth); }; });

    auto* samples = check->add_subcommand("normal-samples", "Sampled subobjects of representables are normal");
    int sample_count = 50, sample_n = 3;
    samples->add_option("--samples", sample_count);
    samples->add_option("--max-n", sample_n);
    samples->callback(
        [&] { action = [&] { return cmd_check_normal_samples(opt, std::cout, sample_count, sample_n); }; });

    auto* exp = app.add_subcommand("export", "Realize and export a mesh");
    std::string format = "off";
    exp->add_option("file", file_a)->required();
    exp->add_option("--format", format)->check(CLI::IsMember({"off", "obj", "json"}));
    exp->callback([&] { action = [&] { return cmd_export(opt, std::cout, file_a, format); }; });

    auto* eul = app.add_subcommand("euler", "Euler characteristic of the realization");
    eul->add_option("file", file_a)->required();
    eul->callback([&] { action = [&] { return cmd_euler(opt, std::cout, file_a); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    // buffer the report so a failure never leaves half a document behind
    std::ostringstream buf;
    std::streambuf* saved = std::cout.rdbuf(buf.rdbuf());
    int code = kOk;
    try {
        opt.max_n = max_n_from_env();
        code = action();
    } catch (const CLI::Error& e) {
        std::cout.rdbuf(saved);
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cout.rdbuf(saved);
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const json::exception& e) {
        std::cout.rdbuf(saved);
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    std::cout.rdbuf(saved);
    if (out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << out_path << "\n";
            return kInvalid;
        }
        f << buf.str();
    }
    return code;
}
