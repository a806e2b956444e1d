#include <poncelet/scenario.hpp>

#include <poncelet/circle_space.hpp>
#include <poncelet/conic.hpp>
#include <poncelet/emch.hpp>
#include <poncelet/money_coutts.hpp>
#include <poncelet/pencil_count.hpp>
#include <poncelet/quadric.hpp>
#include <poncelet/revolution.hpp>
#include <poncelet/steiner.hpp>
#include <poncelet/zigzag.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace poncelet::lab {

  using nlohmann::json;

  namespace {

    [[noreturn]] void schema_fail(const std::string& field, const std::string& what)
    {
      throw SchemaError(field + ": " + what);
    }

    auto to_complex(const json& j, const std::string& field) -> Complex
    {
      if (j.is_number())
        return {j.get<double>(), 0.0};
      if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
      schema_fail(field, "expected a number or a [re, im] pair");
    }

    auto to_vector(const json& j, int n, const std::string& field) -> Eigen::VectorXcd
    {
      if (!j.is_array() || static_cast<int>(j.size()) != n)
        schema_fail(field, "expected a list of " + std::to_string(n) + " coefficients");
      Eigen::VectorXcd v(n);
      for (int i = 0; i < n; ++i)
        v[i] = to_complex(j[i], field + "[" + std::to_string(i) + "]");
      return v;
    }

    auto to_matrix(const json& j, int n, const std::string& field) -> Eigen::MatrixXcd
    {
      if (!j.is_array() || static_cast<int>(j.size()) != n)
        schema_fail(field, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
      Eigen::MatrixXcd m(n, n);
      for (int i = 0; i < n; ++i)
        m.row(i) = to_vector(j[i], n, field + "[" + std::to_string(i) + "]").transpose();
      if ((m - m.transpose()).norm() > 1e-12 * m.norm())
        schema_fail(field, "matrix must be symmetric");
      return m;
    }

    auto from_complex(Complex z) -> json
    {
      auto num = [](double x) -> json { return std::isfinite(x) ? json(x) : json(nullptr); };
      return json::array({num(z.real()), num(z.imag())});
    }

    auto finite(double x) -> json
    {
      return std::isfinite(x) ? json(x) : json(nullptr);
    }

    template <typename V>
    auto from_vector(const V& v) -> json
    {
      json out = json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(from_complex(v[i]));
      return out;
    }

    //! Read access to one section of the scenario with field paths for errors.
    class Section
    {
    public:
      Section(const json& root, std::string name)
        : name_(std::move(name))
      {
        if (root.contains(name_))
        {
          if (!root.at(name_).is_object())
            schema_fail(name_, "expected an object");
          data_ = root.at(name_);
        }
        else
          data_ = json::object();
      }

      auto has(const std::string& key) const -> bool { return data_.contains(key); }

      auto path(const std::string& key) const -> std::string { return name_ + "." + key; }

      auto at(const std::string& key) const -> const json&
      {
        if (!data_.contains(key))
          schema_fail(path(key), "missing");
        return data_.at(key);
      }

      auto integer(const std::string& key, int fallback) const -> int
      {
        if (!has(key))
          return fallback;
        if (!data_.at(key).is_number_integer())
          schema_fail(path(key), "expected an integer");
        return data_.at(key).get<int>();
      }

      auto sign(const std::string& key) const -> int
      {
        const int s = integer(key, 1);
        if (s != 1 && s != -1)
          schema_fail(path(key), "expected 1 or -1");
        return s;
      }

      auto branch(const std::string& key) const -> int
      {
        const int b = integer(key, 0);
        if (b != 0 && b != 1)
          schema_fail(path(key), "expected 0 or 1");
        return b;
      }

      auto complex(const std::string& key) const -> Complex { return to_complex(at(key), path(key)); }

      auto vector(const std::string& key, int n) const -> Eigen::VectorXcd
      {
        return to_vector(at(key), n, path(key));
      }

      auto matrix(const std::string& key, int n) const -> Eigen::MatrixXcd
      {
        return to_matrix(at(key), n, path(key));
      }

    private:
      std::string name_;
      json data_;
    };

    struct Context
    {
      const json& scenario;
      Section geometry;
      Section params;
      ToleranceContext tol;
      std::uint64_t seed = 0;
      Rng rng;
      Report report;
    };

    auto chain_json(const ChainReport& rep) -> json
    {
      json j;
      j["closed"] = rep.closed;
      j["order"] = rep.order ? json(*rep.order) : json(nullptr);
      j["residual"] = finite(rep.residual);
      j["steps"] = rep.steps;
      j["flagged_steps"] = rep.flagged_steps;
      j["element_count"] = rep.elements.size();
      return j;
    }

    auto n_max(const Context& c) -> int
    {
      const int n = c.params.integer("n_max", c.tol.max_order);
      if (n < 1)
        schema_fail(c.params.path("n_max"), "must be positive");
      return n;
    }

    auto order(const Context& c) -> int
    {
      return c.params.integer("n", 3);
    }

    auto circle3d(const Section& s, const std::string& key) -> Circle3D
    {
      const json& j = s.at(key);
      if (!j.is_object())
        schema_fail(s.path(key), "expected {center, normal, radius}");
      const std::string p = s.path(key);
      for (const char* f : {"center", "normal", "radius"})
        if (!j.contains(f))
          schema_fail(p + "." + f, "missing");
      return make_circle3d(to_vector(j.at("center"), 3, p + ".center"),
                           to_vector(j.at("normal"), 3, p + ".normal"),
                           to_complex(j.at("radius"), p + ".radius"));
    }

    void run_chain(Context& c)
    {
      const Conic inner = c.geometry.matrix("inner", 3);
      const Conic outer = c.geometry.matrix("outer", 3);
      const Point2 u = c.params.has("start") ? Point2(c.params.vector("start", 3))
                                             : random_point_on_conic(outer, c.rng);
      const auto start = make_chain_state(inner, u, c.params.branch("branch"), c.tol);
      const ChainReport rep = poncelet_chain(inner, outer, start, n_max(c), c.tol);
      c.report.json["result"] = chain_json(rep);
      c.report.elements = rep.elements;
    }

    void run_weyr(Context& c)
    {
      const Quadric q1 = c.geometry.matrix("q1", 4);
      const Quadric q2 = c.geometry.matrix("q2", 4);
      const Ruling r1(q1, c.params.sign("sign1"), c.tol);
      const Ruling r2(q2, c.params.sign("sign2"), c.tol);
      json j;
      j["intersection_kind"] = to_string(intersection_kind(q1, q2, c.tol));
      const auto ord = weyr_translation_order(r1, r2, c.tol, c.seed);
      j["order"] = ord ? json(*ord) : json(nullptr);
      const Point3 e = c.params.has("start") ? Point3(c.params.vector("start", 4))
                                             : random_point_on_base_curve(r1, q2, c.rng);
      const ChainReport rep = weyr_chain(r1, r2, e, n_max(c), c.tol);
      j["chain"] = chain_json(rep);
      c.report.json["result"] = j;
      c.report.elements = rep.elements;
    }

    void random_pencil(Context& c, Conic& a, Conic& b)
    {
      if (c.geometry.has("c") || c.geometry.has("d"))
      {
        a = c.geometry.matrix("c", 3);
        b = c.geometry.matrix("d", 3);
        return;
      }
      a = c.rng.symmetric<3>();
      b = c.rng.symmetric<3>();
    }

    void run_count(Context& c, PencilMode mode)
    {
      Conic a;
      Conic b;
      random_pencil(c, a, b);
      const int n = order(c);
      const PencilCount pc = pencil_poncelet_members(a, b, n, mode, c.tol, c.seed);
      json j;
      j["n"] = n;
      j["count"] = pc.count;
      j["expected"] = jordan_totient_T(n) / (mode == PencilMode::Inscribed ? 2 : 4);
      json params = json::array();
      for (const Complex s : pc.parameters)
        params.push_back(from_complex(s));
      j["parameters"] = params;
      j["newton_starts"] = pc.newton_starts;
      c.report.json["result"] = j;
    }

    void run_revolution(Context& c)
    {
      const Eigen::VectorXcd a = c.geometry.vector("q1", 3);
      const Eigen::VectorXcd b = c.geometry.vector("q2", 3);
      const RevolutionQuadric q1{a[0], a[1], a[2]};
      const RevolutionQuadric q2{b[0], b[1], b[2]};
      const int n = order(c);
      const PairInvariants inv = pair_invariants(q1.form(), q2.form());
      const ClosedFormResult cf = closed_form_poncelet_test(inv, n, c.tol);
      const auto oracle = revolution_order_oracle(q1, q2, n_max(c), c.tol, c.seed);
      json j;
      j["n"] = n;
      j["invariants"] = {{"D1", from_complex(inv.D1)}, {"D2", from_complex(inv.D2)},
                         {"J12", from_complex(inv.J12)}};
      j["closed_form"] = {{"holds", cf.holds},
                          {"witness", cf.witness ? json(*cf.witness) : json(nullptr)},
                          {"residual", finite(cf.residual)}};
      j["oracle_order"] = oracle ? json(*oracle) : json(nullptr);
      j["agree"] = cf.holds == (oracle && *oracle == n);
      c.report.json["result"] = j;
    }

    void run_circle_test(Context& c)
    {
      const CircleVector c1 = c.geometry.vector("c1", 4);
      const CircleVector c2 = c.geometry.vector("c2", 4);
      json j;
      j["q1"] = from_complex(q_form(c1));
      j["q2"] = from_complex(q_form(c2));
      j["q_pair"] = from_complex(q_pair(c1, c2));
      j["orthogonal"] = is_orthogonal(c1, c2, c.tol);
      j["touch_residual"] = from_complex(touch_residual(c1, c2));
      j["tangent_cone_rank"] = numerical_rank(tangent_cone(c1), std::sqrt(c.tol.rel_tol));
      json fams = json::array();
      for (const auto& f : touching_families(c1, c2, c.tol))
        fams.push_back({{"sign", f.sign},
                        {"plane", from_vector(f.plane)},
                        {"root1", from_complex(f.root1)},
                        {"root2", from_complex(f.root2)}});
      j["families"] = fams;
      json nulls = json::array();
      for (const auto& n : null_circles(c1, c2, c.tol))
        nulls.push_back(from_vector(normalize(n)));
      j["null_circles"] = nulls;
      if (c.geometry.has("c3"))
      {
        const CircleVector c3 = c.geometry.vector("c3", 4);
        json lines = json::array();
        for (int e12 : {1, -1})
          for (int e13 : {1, -1})
            for (int e23 : {1, -1})
              lines.push_back({{"eps", {e12, e13, e23}},
                               {"has_line", common_line(c1, c2, c3, e12, e13, e23, c.tol).has_value()},
                               {"defect", common_line_defect(c1, c2, c3, e12, e13, e23)}});
        j["common_lines"] = lines;
      }
      c.report.json["result"] = j;
    }

    auto start_parameter(Context& c) -> Complex
    {
      return c.params.has("start") ? c.params.complex("start") : c.rng.disk();
    }

    void run_emch(Context& c)
    {
      const CircleVector c1 = c.geometry.vector("c1", 4);
      const CircleVector c2 = c.geometry.vector("c2", 4);
      const CircleVector cc = c.geometry.vector("c", 4);
      const TouchingFamily f = touching_family(c1, c2, c.params.sign("sign"), c.tol);
      const EmchState s = make_emch_state(cc, f.circle(start_parameter(c)),
                                          c.params.branch("branch"));
      const ChainReport rep = emch_chain(f, cc, s, n_max(c), c.tol);
      json j;
      j["chain"] = chain_json(rep);
      j["branch_circles"] = emch_branch_circles(f, cc, c.tol).size();
      c.report.json["result"] = j;
      c.report.elements = rep.elements;
    }

    void run_steiner(Context& c)
    {
      const CircleVector c1 = c.geometry.vector("c1", 4);
      const CircleVector c2 = c.geometry.vector("c2", 4);
      const TouchingFamily f = touching_family(c1, c2, c.params.sign("sign"), c.tol);
      const CircleVector start = f.circle(start_parameter(c));
      const ChainReport rep = steiner_chain(f, start, c.params.branch("branch"), n_max(c), c.tol);
      const SteinerMultiplier m = steiner_multiplier(f, c.tol);
      json j;
      j["chain"] = chain_json(rep);
      j["multiplier"] = {{"value", from_complex(m.value)},
                         {"deviation", finite(m.deviation)},
                         {"root_of_unity_order", m.root_of_unity_order
                                                     ? json(*m.root_of_unity_order)
                                                     : json(nullptr)}};
      c.report.json["result"] = j;
      c.report.elements = rep.elements;
    }

    void run_zigzag(Context& c)
    {
      const Circle3D c1 = circle3d(c.geometry, "c1");
      const Circle3D c2 = circle3d(c.geometry, "c2");
      const Complex r = c.params.complex("r");
      const Point3 start = c.params.has("start") ? Point3(c.params.vector("start", 4))
                                                 : random_point_on_circle3d(c1, c.rng);
      const ChainReport rep = zigzag_chain(c1, c2, r, start, c.params.branch("branch"),
                                           n_max(c), c.tol);
      c.report.json["result"] = {{"chain", chain_json(rep)}};
      c.report.elements = rep.elements;
    }

    auto bits(const json& j, const std::string& field) -> std::array<bool, 3>
    {
      if (!j.is_array() || j.size() != 3)
        schema_fail(field, "expected three 0/1 bits");
      std::array<bool, 3> out{};
      for (int i = 0; i < 3; ++i)
      {
        if (!j[i].is_number_integer() || (j[i] != 0 && j[i] != 1))
          schema_fail(field + "[" + std::to_string(i) + "]", "expected 0 or 1");
        out[i] = j[i] == 1;
      }
      return out;
    }

    void run_money_coutts(Context& c)
    {
      const MoneyCouttsSetup m = make_money_coutts(
          c.geometry.vector("c1", 4), c.geometry.vector("c2", 4), c.geometry.vector("c3", 4),
          c.params.sign("sign1"), c.params.sign("sign2"), c.tol);
      const Complex theta0 = start_parameter(c);
      json j;
      j["kappa_spread"] = m.kappa_spread;
      j["kappa_product_defect"] = m.kappa_product_defect;
      if (c.params.has("rounds"))
      {
        const json& r = c.params.at("rounds");
        if (!r.is_array() || r.empty())
          schema_fail(c.params.path("rounds"), "expected a non-empty list of bit triples");
        ChoiceSequence seq;
        for (std::size_t i = 0; i < r.size(); ++i)
          seq.rounds.push_back(bits(r[i], c.params.path("rounds") + "[" + std::to_string(i) + "]"));
        const ChainReport rep = money_coutts_sequence(m, theta0, seq, c.tol);
        j["sequence"] = chain_json(rep);
        c.report.elements = rep.elements;
      }
      else
      {
        const auto alpha = c.params.has("alpha") ? bits(c.params.at("alpha"), c.params.path("alpha"))
                                                 : std::array<bool, 3>{false, false, false};
        const MoneyCouttsRun run = money_coutts_run(m, theta0, alpha, c.tol,
                                                    c.params.integer("wrong_parity", 0) != 0);
        j["alpha"] = run.alpha;
        j["beta"] = run.beta;
        j["closed"] = run.closed;
        j["residual"] = finite(run.residual);
        j["link_residual"] = finite(run.link_residual);
        for (const auto& s : run.S)
          c.report.elements.push_back(s);
      }
      c.report.json["result"] = j;
    }

    auto tolerances(const json& scenario, const RunOptions& opts) -> ToleranceContext
    {
      ToleranceContext t;
      const Section s(scenario, "tolerances");
      auto real = [&](const char* key, double& out) {
        if (!s.has(key))
          return;
        if (!s.at(key).is_number())
          schema_fail(s.path(key), "expected a number");
        out = s.at(key).get<double>();
      };
      real("rel_tol", t.rel_tol);
      real("closure_tol", t.closure_tol);
      t.max_order = s.integer("max_order", t.max_order);
      t.scan_samples = s.integer("scan_samples", t.scan_samples);
      if (opts.closure_tol)
        t.closure_tol = *opts.closure_tol;
      if (opts.max_order)
        t.max_order = *opts.max_order;
      try
      {
        t.validate();
      }
      catch (const GeometryError& e)
      {
        schema_fail("tolerances", e.what());
      }
      return t;
    }

  }  // namespace

  auto parse_scenario(const std::string& text) -> json
  {
    try
    {
      return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
      throw SchemaError(std::string("scenario: ") + e.what());
    }
  }

  auto load_scenario(const std::string& path) -> json
  {
    std::ifstream in(path);
    if (!in)
      throw SchemaError("scenario: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
  }

  auto digest(const json& j) -> std::string
  {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char ch : j.dump())
    {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  auto run_scenario(const json& scenario, const RunOptions& opts) -> Report
  {
    if (!scenario.is_object())
      throw SchemaError("scenario: expected a JSON object");
    if (scenario.contains("schema") && scenario.at("schema") != kSchema)
      throw SchemaError(std::string("schema: expected \"") + kSchema + "\"");
    if (!scenario.contains("command") || !scenario.at("command").is_string())
      throw SchemaError("command: missing or not a string");
    std::uint64_t seed = 0;
    if (scenario.contains("seed"))
    {
      if (!scenario.at("seed").is_number_unsigned())
        throw SchemaError("seed: expected a non-negative integer");
      seed = scenario.at("seed").get<std::uint64_t>();
    }
    if (opts.seed)
      seed = *opts.seed;

    Context c{scenario, Section(scenario, "geometry"), Section(scenario, "parameters"),
              tolerances(scenario, opts), seed, Rng(seed), {}};
    const std::string command = scenario.at("command").get<std::string>();
    c.report.json["schema"] = kSchema;
    c.report.json["command"] = command;
    c.report.json["seed"] = seed;
    c.report.json["input_digest"] = digest(scenario);
    c.report.json["tolerances"] = {{"rel_tol", c.tol.rel_tol},
                                   {"closure_tol", c.tol.closure_tol},
                                   {"max_order", c.tol.max_order},
                                   {"scan_samples", c.tol.scan_samples}};

    const std::map<std::string, std::function<void(Context&)>> table{
        {"chain", run_chain},
        {"weyr", run_weyr},
        {"count-inscribed", [](Context& x) { run_count(x, PencilMode::Inscribed); }},
        {"count-circumscribed", [](Context& x) { run_count(x, PencilMode::Circumscribed); }},
        {"revolution-test", run_revolution},
        {"circle-test", run_circle_test},
        {"emch", run_emch},
        {"steiner", run_steiner},
        {"zigzag", run_zigzag},
        {"money-coutts", run_money_coutts},
    };
    const auto it = table.find(command);
    if (it == table.end())
      throw SchemaError("command: unknown command \"" + command + "\"");
    it->second(c);
    return c.report;
  }

  auto error_report(const json& scenario, const std::string& code, const std::string& message)
      -> json
  {
    json j;
    j["schema"] = kSchema;
    if (scenario.is_object() && scenario.contains("command"))
      j["command"] = scenario.at("command");
    j["input_digest"] = digest(scenario);
    j["error"] = {{"code", code}, {"message", message}};
    return j;
  }

  void write_csv(const Report& report, std::ostream& out)
  {
    Eigen::Index width = 0;
    for (const auto& e : report.elements)
      width = std::max(width, e.size());
    out << "index";
    for (Eigen::Index i = 0; i < width; ++i)
      out << ",re" << i << ",im" << i;
    out << "\n";
    out.precision(17);
    for (std::size_t k = 0; k < report.elements.size(); ++k)
    {
      out << k;
      const auto& e = report.elements[k];
      for (Eigen::Index i = 0; i < width; ++i)
      {
        if (i < e.size())
          out << "," << e[i].real() << "," << e[i].imag();
        else
          out << ",,";
      }
      out << "\n";
    }
  }

}  // namespace poncelet::lab
