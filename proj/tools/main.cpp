// Command-line front end: every subcommand emits JSON-lines records.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "twistrack/classifier.hpp"
#include "twistrack/config.hpp"
#include "twistrack/oracle.hpp"
#include "twistrack/report.hpp"
#include "twistrack/special.hpp"
#include "twistrack/torus.hpp"

namespace {

using namespace twr;

FieldPtr field_for_q(i64 q) {
  i64 p = factor_i64(q, 100000)[0];
  int m = 0;
  for (i64 t = q; t > 1; t /= p) ++m;
  return Field::make(p, m);
}

Json sig_json(const PartitionSignature& s) {
  return Json{{"lambda", s.lambda}, {"eps", s.eps}};
}

Json verdict_json(const Verdict& v) {
  Json j{{"outcome", outcome_name(v.outcome)}};
  if (!v.justification.empty()) j["justification"] = v.justification;
  if (!v.table_rows.empty()) j["table_rows"] = v.table_rows;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json sweep_records_json(const SweepResult& res) {
  Json arr = Json::array();
  for (const auto& r : res.records) {
    if (r.verdict.outcome == Outcome::TypeD) continue;
    Json j{{"n", r.n}, {"q", r.q}};
    j.update(sig_json(r.sig));
    j["x_branch"] = xbranch_name(r.branch);
    j["verdict"] = verdict_json(r.verdict);
    j["transcription_rows"] = r.transcription_rows;
    arr.push_back(std::move(j));
  }
  return arr;
}

int run(int argc, char** argv) {
  CLI::App app{"twistrack: twisted conjugacy racks of PSL_n(q) and the type-D criteria"};
  app.require_subcommand(1);
  std::string out_path, config_path, cache_dir;
  int threads = 0;
  app.add_option("--out", out_path, "write JSON-lines records to this file");
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--threads", threads, "worker count (0 = hardware)");
  app.add_option("--cache-dir", cache_dir, "closure cache directory");

  // ---- field
  auto* cfield = app.add_subcommand("field", "finite field construction and queries");
  i64 fp = 3;
  int fm = 1;
  std::string fmod, felem;
  bool fgen = false;
  cfield->add_option("--p", fp, "odd prime")->required();
  cfield->add_option("--m", fm, "extension degree");
  cfield->add_option("--modulus", fmod, "monic modulus coefficients c0,c1,...,1");
  cfield->add_option("--order", felem, "element whose multiplicative order to report");
  cfield->add_flag("--generator", fgen, "report the deterministic generator");

  // ---- mat
  auto* cmat = app.add_subcommand("mat", "matrix utilities over GF(q)");
  int mn = 3;
  i64 mq = 3;
  std::string mmat, mop = "canon";
  cmat->add_option("--n", mn)->required();
  cmat->add_option("--q", mq)->required();
  cmat->add_option("--matrix", mmat, "rows ';', entries ','")->required();
  cmat->add_option("--op", mop, "canon | order | psl | theta");

  // ---- weyl
  auto* cweyl = app.add_subcommand("weyl", "theta-fixed Weyl combinatorics");
  int wn = 4;
  std::string wsig;
  bool wreps = false;
  cweyl->add_option("--n", wn)->required();
  cweyl->add_option("--sigma", wsig, "signature lambda=..;eps=..");
  cweyl->add_flag("--reps", wreps, "list all class representatives");

  // ---- torus
  auto* ctorus = app.add_subcommand("torus", "twisted torus fixed groups and criteria");
  int tn = 4;
  i64 tq = 3;
  std::string tlambda, teps;
  bool trealize = false;
  ctorus->add_option("--n", tn)->required();
  ctorus->add_option("--q", tq)->required();
  ctorus->add_option("--lambda", tlambda, "comma-separated parts")->required();
  ctorus->add_option("--eps", teps, "comma-separated 0/1")->required();
  ctorus->add_flag("--realize", trealize, "realize inside GL_n(q) and certify");

  // ---- orbit / typed
  auto* corbit = app.add_subcommand("orbit", "enumerate a twisted orbit");
  auto* ctyped = app.add_subcommand("typed", "search a twisted orbit for a type-D witness");
  std::string okind = "PSL", oauto = "theta", omat;
  int on = 3;
  i64 oq = 3;
  u64 obudget = 1'000'000;
  for (CLI::App* c : {corbit, ctyped}) {
    c->add_option("--group", okind, "acting group kind");
    c->add_option("--n", on)->required();
    c->add_option("--q", oq)->required();
    c->add_option("--x", omat, "base point (identity if omitted)");
    c->add_option("--auto", oauto, "automorphism descriptor (theta, frob^b, ad:<m>, joined by *)");
    c->add_option("--budget", obudget, "pair budget for the search");
  }

  // ---- classify / sweep
  auto* cclassify = app.add_subcommand("classify", "decision ladder for one class descriptor");
  int cn = 4;
  i64 cq = 3;
  std::string clambda, ceps, cxinfo;
  cclassify->add_option("--n", cn)->required();
  cclassify->add_option("--q", cq)->required();
  cclassify->add_option("--lambda", clambda)->required();
  cclassify->add_option("--eps", ceps)->required();
  cclassify->add_option("--x-info", cxinfo,
                        "identity | theta-inv | not-theta-inv | missing (default unknown)");

  auto* csweep = app.add_subcommand("sweep", "enumerate exceptions over a grid");
  int sn = 8;
  i64 sq = 13;
  std::string sgolden, swrite;
  csweep->add_option("--n-max", sn);
  csweep->add_option("--q-max", sq);
  csweep->add_option("--golden", sgolden, "compare exception records against this JSON file");
  csweep->add_option("--write-golden", swrite, "write the exception records to this JSON file");

  // ---- verify
  auto* cverify = app.add_subcommand("verify", "paper-derived certifications");
  cverify->require_subcommand(1);
  auto* vh2 = cverify->add_subcommand("h2", "order-(q+1)/2 construction at n=4");
  i64 vq = 11;
  vh2->add_option("--q", vq)->required();
  auto* vpsl43 = cverify->add_subcommand("psl43", "max projective order over the m-shape at q=3");
  auto* vunip = cverify->add_subcommand("unipotent", "type-D witness for the transvection class");
  int un = 4;
  i64 uq = 5;
  bool unonsquare = false;
  vunip->add_option("--n", un)->required();
  vunip->add_option("--q", uq)->required();
  vunip->add_flag("--eta-nonsquare", unonsquare);
  auto* vth51 = cverify->add_subcommand("theorem51", "torus coverage of theta-semisimple classes");
  int t51n = 3;
  i64 t51q = 3;
  vth51->add_option("--n", t51n)->required();
  vth51->add_option("--q", t51q)->required();

  // ---- search question
  auto* csearch = app.add_subcommand("search", "searches");
  csearch->require_subcommand(1);
  auto* squest = csearch->add_subcommand("question", "witness search for the open class");
  int qn = 2;
  i64 qq = 5;
  u64 qbudget = 1'000'000;
  squest->add_option("--n", qn)->required();
  squest->add_option("--q", qq)->required();
  squest->add_option("--budget", qbudget);

  // ---- oracle
  auto* coracle = app.add_subcommand("oracle", "brute-force ground truth");
  coracle->require_subcommand(1);
  auto* oenum = coracle->add_subcommand("enumerate", "full group closure");
  std::string ekind = "PSL";
  int en = 3;
  i64 eq = 3;
  oenum->add_option("--kind", ekind)->required();
  oenum->add_option("--n", en)->required();
  oenum->add_option("--q", eq)->required();
  auto* opart = coracle->add_subcommand("partition", "twisted class partition of PGL under PSL");
  int pn = 3;
  i64 pq = 3;
  opart->add_option("--n", pn)->required();
  opart->add_option("--q", pq)->required();
  auto* otyped = coracle->add_subcommand("typed", "exhaustive type-D decision for a class");
  std::string oxmat;
  int otn = 4;
  i64 otq = 3;
  otyped->add_option("--n", otn)->required();
  otyped->add_option("--q", otq)->required();
  otyped->add_option("--x", oxmat, "class representative (identity if omitted)");
  auto* oth51 = coracle->add_subcommand("theorem51", "alias of verify theorem51");
  oth51->add_option("--n", t51n);
  oth51->add_option("--q", t51q);

  CLI11_PARSE(app, argc, argv);

  if (!config_path.empty()) Config::global().load_file(config_path);
  if (threads) Config::global().threads = threads;
  if (!cache_dir.empty()) Config::global().cache_dir = cache_dir;
  const int workers = Config::global().effective_threads();

  std::ofstream out_file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    out_file.open(out_path, std::ios::trunc);
    os = &out_file;
  }
  int exit_code = 0;

  auto parse_int_list = [](const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
    return out;
  };

  if (*cfield) {
    auto f = fmod.empty()
                 ? Field::make(fp, fm)
                 : Field::make(fp, fm, [&] {
                     std::vector<i64> c;
                     std::istringstream is(fmod);
                     std::string tok;
                     while (std::getline(is, tok, ',')) c.push_back(std::stoll(tok));
                     return c;
                   }());
    Record rec("field", Json{{"p", fp}, {"m", fm}});
    rec.set("modulus", f->modulus_string());
    rec.set("q", f->q());
    if (fgen) rec.set("generator", f->to_string(f->generator()));
    if (!felem.empty()) rec.set("element_order", f->elem_order(f->parse(felem)));
    rec.emit(*os);
  } else if (*cmat) {
    auto f = field_for_q(mq);
    Mat x = mat_parse(f.get(), mn, mmat);
    Record rec("mat", Json{{"n", mn}, {"q", mq}, {"matrix", mmat}, {"op", mop}});
    rec.set("modulus", f->modulus_string());
    if (mop == "canon") rec.set("canonical", mat_to_string(proj_canon(x)));
    else if (mop == "order") rec.set("projective_order", proj_order(x));
    else if (mop == "psl") rec.set("psl_member", psl_membership(proj_canon(x)));
    else if (mop == "theta") rec.set("theta", mat_to_string(theta_apply(x)));
    else fail(Errc::Usage, "unknown --op " + mop);
    rec.emit(*os);
  } else if (*cweyl) {
    Record rec("weyl", Json{{"n", wn}});
    rec.set("w0", longest_element(wn).to_string());
    if (!wsig.empty()) {
      auto sig = PartitionSignature::parse(wn, wsig);
      rec.set("sigma", sigma(sig.lambda, sig.eps, wn).to_string());
    }
    if (wreps) {
      Json arr = Json::array();
      for (const auto& sig : conjugacy_reps(wn)) {
        arr.push_back(Json{{"signature", sig.to_string()},
                           {"perm", sigma(sig.lambda, sig.eps, wn).to_string()}});
      }
      rec.set("representatives", arr);
    }
    rec.emit(*os);
  } else if (*ctorus) {
    PartitionSignature sig{tn, parse_int_list(tlambda), parse_int_list(teps)};
    sig.validate();
    Record rec("torus", Json{{"n", tn}, {"q", tq}, {"lambda", sig.lambda}, {"eps", sig.eps}});
    auto f = field_for_q(tq);
    rec.set("modulus", f->modulus_string());
    TorusGroup tg = torus_group(tn, tq, sig);
    FinAb kw = k_subgroup(tn, tq, sig);
    GammaImage gi = gamma_image(tn, tq, sig);
    rec.set("torus_order", tg.order());
    rec.set("torus_invariant_factors", tg.group.invariant_factors());
    rec.set("k_order", kw.order());
    rec.set("gamma_image_order", gi.image.order());
    rec.set("gamma_image_invariant_factors", gi.image.invariant_factors());
    auto zc = zeta_criterion(tn, tq, sig);
    auto tc = two_orbits_criterion(tn, tq, sig);
    rec.set("zeta", zc.witness_order ? Json{{"witness_order", *zc.witness_order},
                                            {"torus_element", zc.torus_element}}
                                     : Json{{"witness_order", nullptr}});
    rec.set("two_orbits", tc.witness_order ? Json{{"witness_order", *tc.witness_order},
                                                  {"torus_element", tc.torus_element}}
                                           : Json{{"witness_order", nullptr}});
    if (trealize) {
      RealizedTorus rt(f, tn, sig);
      auto chk = certify_realization(rt, tg, 2'000'000);
      rec.set("realized", Json{{"order", chk.realized_order},
                               {"exponent", chk.realized_exponent},
                               {"consistent", chk.consistent}});
      if (!chk.consistent) exit_code = 1;
    }
    rec.emit(*os);
  } else if (*corbit || *ctyped) {
    auto f = field_for_q(oq);
    MatGroup g = make_group(parse_group_kind(okind), on, f);
    Automorphism psi = parse_automorphism(f.get(), on, g.projective, oauto);
    MatTwistModel model = make_mat_model(g, psi);
    Mat x = omat.empty() ? g.id() : g.norm(mat_parse(f.get(), on, omat));
    Record rec(*corbit ? "orbit" : "typed",
               Json{{"group", okind}, {"n", on}, {"q", oq}, {"auto", oauto},
                    {"x", mat_to_string(x)}});
    rec.set("modulus", f->modulus_string());
    auto orbit = orbit_enumerate(model, x, Config::global().orbit_cap, workers);
    rec.set("orbit_size", orbit.size());
    if (*ctyped) {
      SearchBudget budget;
      budget.max_pairs = obudget;
      budget.subrack_cap = Config::global().subgroup_cap;
      auto w = typeD_search(model, orbit, budget);
      rec.set("exhausted", budget.exhausted);
      if (w) {
        rec.set("witness",
                Json{{"r", mat_to_string(w->r)},
                     {"s", mat_to_string(w->s)},
                     {"subrack_r", w->subrack_r.size()},
                     {"subrack_s", w->subrack_s.size()},
                     {"ineq_lhs", mat_to_string(w->lhs)},
                     {"ineq_rhs", mat_to_string(w->rhs)}});
      } else {
        rec.set("witness", nullptr);
        rec.set("note", model.ell == 1 && budget.exhausted
                            ? "exhaustive: not of type D"
                            : "no witness found (not conclusive)");
      }
    }
    rec.emit(*os);
  } else if (*cclassify) {
    ClassDescriptor d;
    d.n = cn;
    d.q = cq;
    d.sig = PartitionSignature{cn, parse_int_list(clambda), parse_int_list(ceps)};
    if (cxinfo == "identity") d.x.identity_coset = true;
    else if (cxinfo == "theta-inv") d.x.theta_inverse = true;
    else if (cxinfo == "not-theta-inv") d.x.theta_inverse = false;
    else if (cxinfo == "missing") d.x.missing_class = true;
    else if (!cxinfo.empty()) fail(Errc::Usage, "unknown --x-info " + cxinfo);
    Record rec("classify", Json{{"n", cn}, {"q", cq}, {"lambda", d.sig.lambda},
                                {"eps", d.sig.eps}, {"x_info", cxinfo}});
    rec.set("verdict", verdict_json(classify(d)));
    rec.emit(*os);
  } else if (*csweep) {
    Record rec("sweep", Json{{"n_max", sn}, {"q_max", sq}});
    auto res = table1_sweep(sn, sq);
    rec.set("exception_count", res.exception_count);
    rec.set("derivation_matches_transcription", res.derivation_matches_transcription);
    rec.set("unmatched_rows", res.unmatched_rows);
    Json disagreements = Json::array();
    for (const auto& r : res.records) {
      if (r.agree) continue;
      Json j{{"n", r.n}, {"q", r.q}};
      j.update(sig_json(r.sig));
      j["x_branch"] = xbranch_name(r.branch);
      j["verdict"] = verdict_json(r.verdict);
      j["transcription_rows"] = r.transcription_rows;
      disagreements.push_back(std::move(j));
    }
    rec.set("disagreements", disagreements);
    Json arr = sweep_records_json(res);
    rec.set("exceptions", arr);
    if (!swrite.empty()) {
      std::ofstream g(swrite, std::ios::trunc);
      g << arr.dump(2) << "\n";
    }
    if (!sgolden.empty()) {
      std::ifstream g(sgolden);
      require(g.good(), Errc::Usage, "cannot open golden file " + sgolden);
      Json want = Json::parse(g);
      bool match = (want == arr);
      rec.set("golden_match", match);
      if (!match) exit_code = 1;
    }
    if (!res.derivation_matches_transcription) exit_code = 1;
    rec.emit(*os);
  } else if (*cverify && *vh2) {
    Record rec("verify h2", Json{{"q", vq}});
    auto w = h2_witness(vq);
    rec.set("witness", mat_to_string(w.x));
    rec.set("proj_order_x", w.proj_order_x);
    rec.set("proj_order_x2", w.proj_order_x2);
    rec.emit(*os);
  } else if (*cverify && *vpsl43) {
    Record rec("verify psl43", Json::object());
    auto sc = psl43_scan();
    rec.set("max_proj_order", sc.max_proj_order);
    Json hist = Json::object();
    for (auto& [k, v] : sc.histogram) hist[std::to_string(k)] = v;
    rec.set("histogram", hist);
    rec.set("invertible_count", sc.invertible_count);
    rec.set("identities_verified", sc.identities_verified);
    if (sc.max_proj_order != 4 || !sc.identities_verified) exit_code = 1;
    rec.emit(*os);
  } else if (*cverify && *vunip) {
    Record rec("verify unipotent", Json{{"n", un}, {"q", uq}, {"eta_square", !unonsquare}});
    auto w = unipotent_witness(un, uq, !unonsquare);
    rec.set("r", mat_to_string(w.r));
    rec.set("s", mat_to_string(w.s));
    rec.set("subrack_r", w.subrack_r);
    rec.set("subrack_s", w.subrack_s);
    rec.set("certified", w.certified);
    if (!w.certified) exit_code = 1;
    rec.emit(*os);
  } else if ((*cverify && *vth51) || (*coracle && *oth51)) {
    Record rec("verify theorem51", Json{{"n", t51n}, {"q", t51q}});
    auto rep = theorem51_check(t51n, t51q, workers);
    rec.set("pgl_order", rep.pgl_order);
    rec.set("twisted_classes", rep.twisted_class_count);
    rec.set("theta_semisimple_classes", rep.theta_semisimple_class_count);
    rec.set("covered_classes", rep.covered_class_count);
    rec.set("holds", rep.holds);
    if (!rep.holds) exit_code = 1;
    rec.emit(*os);
  } else if (*csearch && *squest) {
    Record rec("search question", Json{{"n", qn}, {"q", qq}, {"budget", qbudget}});
    auto res = question_search(qn, qq, qbudget);
    rec.set("exhaustive", res.exhaustive);
    rec.set("tried", res.tried);
    Json hist = Json::object();
    for (auto& [k, v] : res.order_histogram) hist[std::to_string(k)] = v;
    rec.set("order_histogram", hist);
    if (res.witness_order) {
      rec.set("witness_order", *res.witness_order);
      rec.set("witness_matrix", res.witness_matrix);
      rec.set("note", "type D (computational evidence)");
    } else {
      rec.set("witness_order", nullptr);
      rec.set("note", res.exhaustive ? "certified none" : "none within budget (inconclusive)");
    }
    rec.emit(*os);
  } else if (*coracle && *oenum) {
    auto f = field_for_q(eq);
    MatGroup g = make_group(parse_group_kind(ekind), en, f);
    Record rec("oracle enumerate", Json{{"kind", ekind}, {"n", en}, {"q", eq}});
    rec.set("modulus", f->modulus_string());
    auto keys = enumerate_group(g, Config::global().closure_cap, workers);
    rec.set("order", keys.size());
    rec.emit(*os);
  } else if (*coracle && *opart) {
    auto f = field_for_q(pq);
    MatGroup pgl = make_group(GroupKind::PGL, pn, f);
    MatGroup psl = make_group(GroupKind::PSL, pn, f);
    Automorphism th = Automorphism::theta(f.get(), pn, true);
    Record rec("oracle partition", Json{{"n", pn}, {"q", pq}});
    auto universe = enumerate_group(pgl, Config::global().closure_cap, workers);
    auto part = twisted_class_partition(pgl, th, psl.gens, std::move(universe), workers);
    rec.set("universe", part.universe.size());
    rec.set("classes", part.reps.size());
    std::vector<u64> sizes = part.sizes;
    std::sort(sizes.begin(), sizes.end());
    rec.set("orbit_sizes", sizes);
    rec.emit(*os);
  } else if (*coracle && *otyped) {
    auto f = field_for_q(otq);
    MatGroup psl = make_group(GroupKind::PSL, otn, f);
    Automorphism th = Automorphism::theta(f.get(), otn, true);
    MatTwistModel model = make_mat_model(psl, th);
    Mat x = oxmat.empty() ? psl.id() : psl.norm(mat_parse(f.get(), otn, oxmat));
    Record rec("oracle typed", Json{{"n", otn}, {"q", otq}, {"x", mat_to_string(x)}});
    auto orbit = orbit_enumerate(model, x, Config::global().orbit_cap, workers);
    rec.set("orbit_size", orbit.size());
    auto res = exhaustive_typeD(model, orbit, true, Config::global().pair_budget);
    rec.set("is_type_d", res.is_type_d);
    rec.set("definite", res.definite);
    rec.set("certificate", res.certificate);
    if (res.witness_r) rec.set("witness_r", *res.witness_r);
    if (res.witness_s) rec.set("witness_s", *res.witness_s);
    rec.emit(*os);
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const twr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == twr::Errc::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
