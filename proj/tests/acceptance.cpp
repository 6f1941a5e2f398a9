// One PASS/FAIL line per acceptance criterion; failures are detailed below it.
#include <functional>
#include <iostream>

#include "criteria.hpp"

using namespace fps::testing;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<void(std::vector<std::string>&)> run;
};

void collect(std::vector<std::string>& failures, const Failure& f) {
  if (f) failures.push_back(*f);
}

template <typename F>
void guarded(std::vector<std::string>& failures, const std::string& name, F&& f) {
  try {
    collect(failures, f());
  } catch (const std::exception& e) {
    failures.push_back(name + ": " + e.what());
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "golden DE suite",
       [](auto& fails) {
         for (const auto& c : de_suite()) {
           guarded(fails, c.name, [&] { return check_de_case(c, c.stress ? 600 : 5); });
         }
       }},
      {2, "sin^5 x needs order 6", [](auto& fails) { guarded(fails, "sin^5", check_sin5); }},
      {3, "DE to RE suite",
       [](auto& fails) {
         for (const auto& c : re_suite()) guarded(fails, c.name, [&] { return check_re_case(c); });
       }},
      {4, "RE to DE example", [](auto& fails) { guarded(fails, "retode", check_retode_example); }},
      {5, "power series suite",
       [](auto& fails) {
         for (const auto& c : series_suite()) guarded(fails, c.name, [&] { return check_series_case(c); });
       }},
      {6, "initial value trace", [](auto& fails) { guarded(fails, "trace", check_initial_value_trace); }},
      {7, "FindRecursion suite",
       [](auto& fails) {
         unsigned seed = 7;
         for (const auto& c : findrec_suite()) {
           guarded(fails, c.name, [&] { return check_findrec_case(c, seed++); });
         }
       }},
      {8, "Convert suite",
       [](auto& fails) {
         for (const auto& c : convert_suite()) guarded(fails, c.name, [&] { return check_convert_case(c); });
       }},
      {9, "property suites",
       [](auto& fails) {
         for (const auto& c : series_suite()) {
           guarded(fails, c.name, [&] { return check_oracle_fidelity(c.input, c.x0); });
         }
         for (const auto& f : differentiation_corpus()) {
           guarded(fails, f, [&] { return check_oracle_fidelity(f); });
           guarded(fails, f, [&] { return check_differentiation(f); });
         }
         for (const auto& c : de_suite()) guarded(fails, c.name, [&] { return check_de_re_round_trip(c); });
         unsigned seed = 100;
         for (const auto& t : random_hypergeometric_sums(30, 2024)) {
           guarded(fails, t, [&] { return check_random_sum(t, seed++); });
         }
       }},
      {10, "determinism",
       [](auto& fails) {
         const std::string first = full_suite_transcript();
         const std::string second = full_suite_transcript();
         if (first != second) fails.push_back("two runs differ");
         if (first.empty()) fails.push_back("empty transcript");
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::vector<std::string> fails;
    c.run(fails);
    std::cout << "criterion " << c.id << " (" << c.title << "): " << (fails.empty() ? "PASS" : "FAIL") << "\n";
    for (const auto& f : fails) std::cout << "  " << f << "\n";
    if (!fails.empty()) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
