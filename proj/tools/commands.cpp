#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace compcat::cli {

using json = nlohmann::ordered_json;

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::undetermined: return "undetermined";
  }
  return "?";
}

int Report::exit_code() const {
  if (error) return 2;
  return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::fail; })
             ? 1
             : 0;
}

namespace {

std::string upper(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::undetermined: return "UNDETERMINED";
  }
  return "?";
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string Report::text() const {
  std::ostringstream out;
  out << "command: " << command << '\n';
  for (const Check& c : checks) {
    out << upper(c.status) << ' ' << c.name << '\n';
    for (const std::string& w : c.witnesses) out << "  - " << w << '\n';
  }
  for (const auto& [k, v] : data.items()) out << k << ": " << scalar(v) << '\n';
  if (error) out << "ERROR " << *error << '\n';
  static constexpr const char* results[] = {"PASS", "FAIL", "ERROR"};
  out << "result: " << results[exit_code()] << '\n';
  return out.str();
}

json Report::json() const {
  nlohmann::ordered_json out;
  out["command"] = command;
  out["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : checks)
    out["checks"].push_back({{"name", c.name}, {"status", to_string(c.status)}, {"witnesses", c.witnesses}});
  out["data"] = data;
  if (error) out["error"] = *error;
  static constexpr const char* results[] = {"pass", "fail", "error"};
  out["result"] = results[exit_code()];
  out["exit"] = exit_code();
  return out;
}

void Workspace::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    load_text(buf.str());
  } catch (const text::DocumentError& e) {
    throw text::DocumentError(e.line(), e.message(), path.string());
  }
}

void Workspace::load_text(std::string_view source) {
  text::Document d = text::parse_document(source);
  if (const text::InstanceDoc* i = d.instance()) {
    if (instance_doc_) throw text::DocumentError(i->line, "an instance is already loaded");
    set_instance(*i);
  }
  std::erase_if(d.blocks, [](const text::Block& b) { return std::holds_alternative<text::InstanceDoc>(b); });
  doc_.merge(std::move(d));
}

void Workspace::set_instance(text::InstanceDoc inst) {
  instance_doc_ = std::move(inst);
  instance_.reset();
}

CategoryPtr Workspace::category(const std::string& name) {
  if (const auto it = categories_.find(name); it != categories_.end()) return it->second;
  const auto* c = doc_.find<text::CategoryDoc>(name);
  if (!c) throw StructuralError("unknown category '" + name + "'");
  return categories_[name] = text::build_category(*c);
}

Functor Workspace::functor(const std::string& name) {
  if (const auto it = functors_.find(name); it != functors_.end()) return it->second;
  const auto* f = doc_.find<text::FunctorDoc>(name);
  if (!f) throw StructuralError("unknown functor '" + name + "'");
  const CategoryPtr s = category(f->source);
  const CategoryPtr t = category(f->target);
  const auto sn = text::category_names(*doc_.find<text::CategoryDoc>(f->source));
  const auto tn = text::category_names(*doc_.find<text::CategoryDoc>(f->target));
  std::vector<Obj> objs(s->object_count(), no_obj);
  for (const auto& e : f->objects) objs[sn.objects.at(e.from)] = tn.objects.at(e.to);
  std::vector<Mor> mors(s->morphism_count(), no_mor);
  for (const auto& e : f->morphisms) mors[sn.morphisms.at(e.from)] = tn.morphisms.at(e.to);
  for (Mor m = 0; m < mors.size(); ++m)
    if (mors[m] == no_mor) mors[m] = t->identity(objs[s->dom(m)]);
  return functors_[name] = Functor(s, t, std::move(objs), std::move(mors));
}

std::vector<Mor> Workspace::components(const std::vector<text::MapEntry>& entries, const std::string& over,
                                       const std::string& in) {
  const auto on = text::category_names(*doc_.find<text::CategoryDoc>(over));
  const auto mn = text::category_names(*doc_.find<text::CategoryDoc>(in));
  std::vector<Mor> out(on.objects.size(), no_mor);
  for (const auto& e : entries) out[on.objects.at(e.from)] = mn.morphisms.at(e.to);
  return out;
}

NatTrans Workspace::nat_trans(const std::string& name) {
  const auto* a = doc_.find<text::NatTransDoc>(name);
  if (!a) throw StructuralError("unknown nat_trans '" + name + "'");
  const auto* f = doc_.find<text::FunctorDoc>(a->source);
  return NatTrans(functor(a->source), functor(a->target), components(a->components, f->source, f->target));
}

Adjunction Workspace::adjunction(const std::string& name) {
  const auto* a = doc_.find<text::AdjunctionDoc>(name);
  if (!a) throw StructuralError("unknown adjunction '" + name + "'");
  const auto* l = doc_.find<text::FunctorDoc>(a->left);
  return make_adjunction(functor(a->left), functor(a->right), components(a->unit, l->source, l->source),
                         components(a->counit, l->target, l->target));
}

LaxMorphism Workspace::lax(const std::string& name) {
  const auto* m = doc_.find<text::LaxDoc>(name);
  if (!m) throw StructuralError("unknown lax morphism '" + name + "'");
  const auto* p1 = doc_.find<text::FunctorDoc>(m->from);
  const auto* p2 = doc_.find<text::FunctorDoc>(m->to);
  return make_lax(arrow_object(functor(m->from)), arrow_object(functor(m->to)), functor(m->total),
                  functor(m->base), components(m->phi, p1->source, p2->target));
}

ArrowTwoCell Workspace::two_cell(const std::string& name) {
  const auto* t = doc_.find<text::TwoCellDoc>(name);
  if (!t) throw StructuralError("unknown two_cell '" + name + "'");
  const LaxMorphism m1 = lax(t->from);
  const LaxMorphism m2 = lax(t->to);
  const auto* l = doc_.find<text::LaxDoc>(t->from);
  const auto* p1 = doc_.find<text::FunctorDoc>(l->from);
  const auto* p2 = doc_.find<text::FunctorDoc>(l->to);
  return ArrowTwoCell{NatTrans(m1.on_base, m2.on_base, components(t->base, p1->target, p2->target)),
                      NatTrans(m1.on_total, m2.on_total, components(t->total, p1->source, p2->source))};
}

LiftData Workspace::lift(const std::string& name) {
  const auto* l = doc_.find<text::LiftDoc>(name);
  if (!l) throw StructuralError("unknown lift '" + name + "'");
  const Functor p1 = functor(l->lower);
  const Functor p2 = functor(l->upper);
  const Adjunction base = adjunction(l->base);
  const Adjunction total = adjunction(l->total);
  const auto* d1 = doc_.find<text::FunctorDoc>(l->lower);
  const auto* d2 = doc_.find<text::FunctorDoc>(l->upper);
  NatTrans phi(compose(p2, total.left), compose(base.left, p1), components(l->phi, d1->source, d2->target));
  NatTrans psi(compose(p1, total.right), compose(base.right, p2), components(l->psi, d2->source, d1->target));
  return LiftData{arrow_object(p1), arrow_object(p2), base, total, std::move(phi), std::move(psi)};
}

const InstanceBundle& Workspace::instance() {
  if (!instance_doc_) throw StructuralError("no instance loaded");
  if (!instance_) {
    const text::InstanceDoc& d = *instance_doc_;
    if (d.kind == "pred")
      instance_ = pred_instance(d.universe);
    else if (d.kind == "rel")
      instance_ = rel_instance(d.universe);
    else
      instance_ = powerset_instance(d.universe, d.base, d.edges);
  }
  return *instance_;
}

namespace {

struct Limits {
  ValidationLimits validation;
  FunctorLimits functor;
  AlgebraLimits algebra;
};

Limits limits(const Options& o) {
  Limits l;
  if (o.budget) {
    l.validation.max_triples = *o.budget;
    l.functor.max_pairs = *o.budget;
    l.algebra.max_cells = *o.budget;
  }
  return l;
}

Check law_check(std::string name, const LawReport& r) {
  Check c{std::move(name), r.passed() ? Status::pass : Status::fail, {}};
  for (const Violation& v : r.violations()) c.witnesses.push_back(v.law + " at " + v.witness);
  if (r.dropped()) c.witnesses.push_back(std::to_string(r.dropped()) + " more violations");
  return c;
}

Check flag_check(std::string name, const NotionFlag& f) {
  const Status s = f.verdict == Verdict::yes ? Status::pass
                   : f.verdict == Verdict::no ? Status::fail
                                              : Status::undetermined;
  return Check{std::move(name), s, f.witnesses};
}

Status verdict_status(Verdict v) {
  return v == Verdict::yes ? Status::pass : v == Verdict::no ? Status::fail : Status::undetermined;
}

StructureSide parse_side(const std::string& s) {
  if (s == "comprehension") return StructureSide::comprehension;
  if (s == "quotient") return StructureSide::quotient;
  throw StructuralError("--side must be comprehension or quotient");
}

bool has_roles(const Options& o) { return !o.proj.empty(); }

SectionData section_for(Workspace& ws, const Options& o) {
  if (has_roles(o)) {
    if (o.section.empty() || o.adjunction.empty())
      throw StructuralError("--proj needs --section and --adjunction here");
    return SectionData{ws.functor(o.proj), ws.functor(o.section), ws.adjunction(o.adjunction),
                       parse_side(o.side)};
  }
  if (ws.has_instance()) return section_data(ws.instance());
  throw StructuralError("no section data: load an instance or pass --proj, --section and --adjunction");
}

std::pair<Functor, Functor> proj_and_section(Workspace& ws, const Options& o) {
  if (has_roles(o)) {
    if (o.section.empty()) throw StructuralError("--proj needs --section here");
    return {ws.functor(o.proj), ws.functor(o.section)};
  }
  if (ws.has_instance()) return {ws.instance().proj, ws.instance().section};
  throw StructuralError("no projection: load an instance or pass --proj and --section");
}

json component_table(const NatTrans& a) {
  json out = json::object();
  const Category& s = *a.source().source();
  const Category& t = *a.source().target();
  for (Obj x = 0; x < s.object_count(); ++x) out[s.object_label(x)] = t.morphism_label(a.at(x));
  return out;
}

template <class T>
std::vector<std::string> selected(const Workspace& ws, const std::vector<std::string>& names) {
  if (!names.empty()) return names;
  std::vector<std::string> out;
  for (const T* b : ws.document().all<T>()) out.push_back(b->name);
  return out;
}

using Handler = std::function<void(Report&, Workspace&, const Options&, const std::vector<std::string>&)>;

void check_category_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>& names) {
  const auto lim = limits(o);
  const auto run = [&](const std::string& label, const Category& c) {
    r.checks.push_back(law_check("category " + label, validate_category(c, lim.validation)));
    r.data["categories"].push_back({{"name", label}, {"objects", c.object_count()}, {"morphisms", c.morphism_count()}});
  };
  const auto chosen = selected<text::CategoryDoc>(ws, names);
  for (const auto& n : chosen) run(n, *ws.category(n));
  if (!chosen.empty()) return;
  if (ws.has_instance()) {
    run("base", *ws.instance().base);
    run("total", *ws.instance().total);
  } else if (o.seed) {
    const CategoryPtr c = generate_category(*o.seed, 3, 8);
    run("seed " + std::to_string(*o.seed), *c);
    r.checks.push_back(law_check("cod_id_dom seed " + std::to_string(*o.seed), verify_cod_id_dom(c)));
  } else {
    throw StructuralError("check-category: no category given (file, instance or --seed)");
  }
}

void check_functor_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>& names) {
  const auto lim = limits(o);
  std::vector<std::string> functors, transformations;
  for (const auto& n : names) (ws.document().find<text::NatTransDoc>(n) ? transformations : functors).push_back(n);
  if (names.empty()) {
    functors = selected<text::FunctorDoc>(ws, {});
    transformations = selected<text::NatTransDoc>(ws, {});
  }
  for (const auto& n : functors) r.checks.push_back(law_check("functor " + n, validate_functor(ws.functor(n), lim.functor)));
  for (const auto& n : transformations) r.checks.push_back(law_check("nat_trans " + n, validate_nat_trans(ws.nat_trans(n))));
  if (!functors.empty() || !transformations.empty()) return;
  if (!ws.has_instance()) throw StructuralError("check-functor: no functor given");
  const InstanceBundle& b = ws.instance();
  r.checks.push_back(law_check("functor proj", validate_functor(b.proj, lim.functor)));
  r.checks.push_back(law_check("functor section", validate_functor(b.section, lim.functor)));
  r.checks.push_back(law_check("functor structure", validate_functor(b.structure, lim.functor)));
}

void adjunction_checks(Report& r, const std::string& label, const Adjunction& a) {
  r.checks.push_back(law_check("adjunction " + label, check_adjunction(a)));
  r.checks.push_back(law_check("hom_bijection " + label, check_hom_bijection(a)));
}

void check_adjunction_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>& names) {
  const auto chosen = selected<text::AdjunctionDoc>(ws, names);
  for (const auto& n : chosen) adjunction_checks(r, n, ws.adjunction(n));
  if (chosen.empty()) adjunction_checks(r, "section", section_for(ws, o).adj);
}

void check_two_cell_cmd(Report& r, Workspace& ws, const Options&, const std::vector<std::string>& names) {
  const auto chosen = selected<text::TwoCellDoc>(ws, names);
  if (chosen.empty()) throw StructuralError("check-two-cell: no two_cell given");
  for (const auto& n : chosen) {
    const auto* d = ws.document().find<text::TwoCellDoc>(n);
    if (!d) throw StructuralError("unknown two_cell '" + n + "'");
    const LaxMorphism m1 = ws.lax(d->from);
    const LaxMorphism m2 = ws.lax(d->to);
    r.checks.push_back(law_check("lax " + d->from, check_lax_morphism(m1)));
    r.checks.push_back(law_check("lax " + d->to, check_lax_morphism(m2)));
    r.checks.push_back(law_check("two_cell " + n, check_two_cell(ws.two_cell(n), m1, m2)));
  }
}

void lift_checks(Report& r, const std::string& label, const LiftData& d) {
  const LiftResult res = lift_adjunction(d);
  const LawReport direct = check_arrow_adjunction(d);
  Check lift{"lift " + label, res.diagnosis == LiftDiagnosis::lifted ? Status::pass : Status::fail, {}};
  if (lift.status == Status::fail) lift.witnesses.push_back(to_string(res.diagnosis));
  r.checks.push_back(std::move(lift));
  r.checks.push_back(law_check("direct " + label, direct));
  const bool agree = (res.diagnosis == LiftDiagnosis::lifted) == direct.passed();
  r.checks.push_back(Check{"agreement " + label, agree ? Status::pass : Status::fail, {}});
  r.data["diagnosis"][label] = to_string(res.diagnosis);
}

void lift_adjunction_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>& names) {
  const auto chosen = selected<text::LiftDoc>(ws, names);
  for (const auto& n : chosen) lift_checks(r, n, ws.lift(n));
  if (!chosen.empty()) return;
  const SectionData sd = section_for(ws, o);
  const ArrowBundle arrows(sd.proj.target());
  const auto cs = derive_comprehension_from_section(sd, arrows);
  lift_checks(r, "section", section_lift_data(sd, cs.iota));
}

std::optional<ImageStructure> image_structure(Report& r, Workspace& ws, const Options& o) {
  const auto [p, section] = proj_and_section(ws, o);
  auto s = build_image_structure(p, section);
  if (!s) {
    const FibrationClass fc = classify_functor(p);
    r.checks.push_back(Check{"image.lifts", Status::fail, fc.missing_opcartesian});
    return std::nullopt;
  }
  r.checks.push_back(Check{"image.lifts", Status::pass, {}});
  return s;
}

void build_image_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>&) {
  const auto s = image_structure(r, ws, o);
  if (!s) return;
  const Category& b = *s->proj.target();
  const Category& e = *s->proj.source();
  json lifts = json::object();
  for (Mor u = 0; u < b.morphism_count(); ++u) lifts[b.morphism_label(u)] = e.morphism_label(s->lift[u]);
  r.data["lifts"] = std::move(lifts);
  const LawReport coherence = check_image_coherence(*s);
  r.checks.push_back(law_check("image.coherence", coherence));
  const ArrowBundle arrows(s->proj.target());
  const Functor image = assemble_image_functor(*s, arrows);
  r.checks.push_back(law_check("image.functor", validate_functor(image, limits(o).functor)));
  LawReport slice;
  if (!(compose(s->proj, image) == arrows.cod())) slice.fail("image.slice.cod", "p∘image ≠ cod");
  if (!(compose(image, arrows.id()) == s->section)) slice.fail("image.slice.section", "image∘id ≠ ⋆");
  r.checks.push_back(law_check("image.slice", slice));
}

void check_image_coherence_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>&) {
  if (const auto s = image_structure(r, ws, o)) r.checks.push_back(law_check("image.coherence", check_image_coherence(*s)));
}

void derive_comprehension_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>&) {
  const SectionData sd = section_for(ws, o);
  const ArrowBundle arrows(sd.proj.target());
  const auto cs = derive_comprehension_from_section(sd, arrows);
  r.checks.push_back(law_check("comprehension", check_comprehension(cs, arrows)));
  r.data["iota"] = component_table(cs.iota);
}

void derive_quotient_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>&) {
  const SectionData sd = section_for(ws, o);
  const ArrowBundle arrows(sd.proj.target());
  const auto qs = derive_quotient_from_section(sd, arrows);
  r.checks.push_back(law_check("quotient", check_quotient(qs, arrows)));
  r.data["pi"] = component_table(qs.pi);
}

void comprehension_with_image_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>&) {
  const SectionData sd = section_for(ws, o);
  const auto s = build_image_structure(sd.proj, sd.section);
  if (!s) throw StructuralError("comprehension-with-image: no opcartesian lifts out of section objects");
  const ArrowBundle arrows(sd.proj.target());
  const ImageAdjunction ia = comprehension_with_image(*s, sd, arrows);
  r.checks.push_back(law_check("image_adjunction", check_comprehension_with_image(ia, *s, arrows)));
  r.checks.push_back(law_check("image_adjunction.hom_bijection", check_hom_bijection(ia.adj)));
}

void classify_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>&) {
  std::optional<SectionData> sd;
  Functor p;
  if (has_roles(o) && (o.section.empty() || o.adjunction.empty())) {
    p = ws.functor(o.proj);
  } else {
    sd = section_for(ws, o);
    p = sd->proj;
  }
  std::optional<ComprehensionStructure> cs;
  if (sd && sd->side == StructureSide::comprehension) {
    try {
      cs = derive_comprehension_from_section(*sd, ArrowBundle(p.target()));
    } catch (const StructuralError& e) {
      r.data["comprehension"] = std::string("not derived: ") + e.what();
    }
  }
  const NotionClassification c = classify_notion(p, sd, cs);
  r.checks.push_back(flag_check("notion.jacobs", c.jacobs));
  r.checks.push_back(flag_check("notion.d_category", c.d_category));
  r.checks.push_back(flag_check("notion.tc_opfibration", c.tc_opfibration));
  r.checks.push_back(flag_check("notion.lawvere", c.lawvere));
  r.data["classification"] = {{"jacobs", to_string(c.jacobs.verdict)},
                              {"d_category", to_string(c.d_category.verdict)},
                              {"tc_opfibration", to_string(c.tc_opfibration.verdict)},
                              {"lawvere", to_string(c.lawvere.verdict)}};
}

std::pair<SectionData, DistributivityPair> endo_data(Workspace& ws) {
  if (!ws.has_instance()) throw StructuralError("no instance loaded");
  const InstanceBundle& b = ws.instance();
  if (!b.endo) throw StructuralError(std::string(to_string(b.kind)) + " instances carry no endofunctors");
  return {section_data(b), distributivity_pair(*b.endo)};
}

void lift_to_algebras_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>&) {
  const auto [sd, dp] = endo_data(ws);
  const CriterionResult crit = check_lifting_criterion(sd, dp);
  r.checks.push_back(law_check("criterion", crit.report));
  if (!crit.report.passed()) return;
  const LiftedComprehension lc = lift_comprehension_to_algebras(sd, dp, limits(o).algebra);
  r.checks.push_back(law_check("lifted.adjunction", check_adjunction(lc.lifted.adj)));
  r.checks.push_back(law_check("lifted.hom_bijection", check_hom_bijection(lc.lifted.adj)));
  r.checks.push_back(law_check("lifted.endo_adjunction",
                               check_endo_adjunction(lc.section_morphism, lc.comp_morphism, sd.adj.unit,
                                                     sd.adj.counit)));
  r.data["base_algebras"] = lc.base_algebras.carrier.size();
  r.data["total_algebras"] = lc.total_algebras.carrier.size();
}

json verdict_record(const TransportVerdict& v) {
  const std::size_t unique = std::count(v.certificate.begin(), v.certificate.end(), std::size_t{1});
  return {{"direction", to_string(v.direction)},
          {v.direction == Direction::algebra ? "mu_F" : "nu_F", v.mu_base_label},
          {"extreme_count", v.mu_base_count},
          {"transported", v.transported_label},
          {"verdict", to_string(v.verdict)},
          {"certificate", {{"algebras", v.certificate.size()}, {"unique", unique}}}};
}

void check_transport_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>&) {
  const auto [sd, dp] = endo_data(ws);
  const auto lim = limits(o).algebra;
  const TransportVerdict forward = check_transport(sd, dp, Direction::algebra, lim);
  r.checks.push_back(Check{"transport.initiality", verdict_status(forward.verdict), {}});
  r.data["transport"] = verdict_record(forward);
  const TransportVerdict dual = check_dual_transport(sd, dp, lim);
  r.checks.push_back(Check{"transport.terminality", verdict_status(dual.verdict), {}});
  r.data["dual"] = verdict_record(dual);
}

void build_instance_cmd(Report& r, Workspace& ws, const Options& o, const std::vector<std::string>& names) {
  if (!names.empty()) throw StructuralError("build-instance: unexpected argument '" + names.front() + "'");
  if (!ws.has_instance()) throw StructuralError("build-instance: expected e.g. 'pred universe=0,1'");
  const InstanceBundle& b = ws.instance();
  r.data["descriptor"] = text::serialize(*ws.instance_doc());
  r.data["side"] = b.side == StructureSide::comprehension ? "comprehension" : "quotient";
  r.data["base"] = {{"objects", b.base->object_count()}, {"morphisms", b.base->morphism_count()}};
  r.data["total"] = {{"objects", b.total->object_count()}, {"morphisms", b.total->morphism_count()}};
  try {
    r.checks.push_back(law_check("instance", validate_instance(b, limits(o).validation)));
  } catch (const ResourceError& e) {
    r.checks.push_back(Check{"instance", Status::undetermined, {e.what()}});
  }
}

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"check-category", check_category_cmd},
      {"check-functor", check_functor_cmd},
      {"check-adjunction", check_adjunction_cmd},
      {"check-two-cell", check_two_cell_cmd},
      {"lift-adjunction", lift_adjunction_cmd},
      {"build-image", build_image_cmd},
      {"check-image-coherence", check_image_coherence_cmd},
      {"derive-comprehension", derive_comprehension_cmd},
      {"derive-quotient", derive_quotient_cmd},
      {"comprehension-with-image", comprehension_with_image_cmd},
      {"classify", classify_cmd},
      {"lift-to-algebras", lift_to_algebras_cmd},
      {"check-transport", check_transport_cmd},
      {"build-instance", build_instance_cmd},
  };
  return h;
}

bool is_instance_kind(const std::string& s) { return s == "pred" || s == "rel" || s == "pow"; }

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, h] : handlers()) out.push_back(n);
    return out;
  }();
  return names;
}

std::string usage() {
  std::string out = "usage: compcat <command> [files | instance descriptor | block names] [flags]\ncommands:\n";
  for (const auto& n : command_names()) out += "  " + n + '\n';
  out += "  run-pipeline\n";
  return out;
}

Report run(const std::string& command, const std::vector<std::string>& args, Workspace& ws, const Options& opt) {
  Report r;
  r.command = command;
  for (const auto& a : args) r.command += ' ' + a;
  const auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& h) { return h.first == command; });
  try {
    if (it == handlers().end()) throw StructuralError("unknown command '" + command + "'\n" + usage());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (is_instance_kind(args[i])) {
        std::vector<std::string> tokens{args[i]};
        while (i + 1 < args.size() && args[i + 1].find('=') != std::string::npos) tokens.push_back(args[++i]);
        ws.set_instance(text::parse_instance(tokens));
        continue;
      }
      std::error_code ec;
      if (std::filesystem::is_regular_file(args[i], ec)) {
        ws.load_file(args[i]);
        continue;
      }
      names.push_back(args[i]);
    }
    it->second(r, ws, opt, names);
  } catch (const text::DocumentError& e) {
    r.error = std::string("parse error: ") + e.what();
  } catch (const ResourceError& e) {
    r.error = std::string("resource limit: ") + e.what();
  } catch (const StructuralError& e) {
    r.error = std::string("structural error: ") + e.what();
  } catch (const std::exception& e) {
    r.error = std::string("error: ") + e.what();
  }
  return r;
}

std::vector<Report> run_pipelines(const Workspace& ws, const std::vector<std::string>& names, const Options& opt) {
  std::vector<const text::PipelineDoc*> pipelines;
  for (const auto* p : ws.document().all<text::PipelineDoc>())
    if (names.empty() || std::find(names.begin(), names.end(), p->name) != names.end()) pipelines.push_back(p);
  for (const auto& n : names)
    if (!ws.document().find<text::PipelineDoc>(n)) {
      Report r;
      r.command = "run-pipeline " + n;
      r.error = "structural error: unknown pipeline '" + n + "'";
      return {r};
    }
  std::sort(pipelines.begin(), pipelines.end(), [](const auto* a, const auto* b) { return a->name < b->name; });

  std::vector<Report> out;
  for (const auto* p : pipelines) {
    Workspace local = ws;
    for (const auto& [line, line_no] : p->commands) {
      std::vector<std::string> words = split_words(line);
      Options o = opt;
      std::vector<std::string> args;
      for (std::size_t i = 1; i < words.size(); ++i) {
        const std::string& w = words[i];
        std::string* role = w == "--proj"       ? &o.proj
                            : w == "--section"    ? &o.section
                            : w == "--adjunction" ? &o.adjunction
                            : w == "--side"       ? &o.side
                                                  : nullptr;
        if (role && i + 1 < words.size()) {
          *role = words[++i];
        } else {
          args.push_back(w);
        }
      }
      Report r = run(words.front(), args, local, o);
      r.command = "pipeline " + p->name + ": " + r.command;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace compcat::cli
