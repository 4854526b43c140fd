#include "fairb/event_system.hpp"

#include "fairb/error.hpp"

namespace fairb {

EventSystem::EventSystem(std::string name, StateSpace space, std::vector<Event> events,
                         std::size_t conjunctivity_samples)
    : name_(std::move(name)), space_(std::move(space)), events_(std::move(events)), whole_(Command::magic(space_)) {
  if (events_.empty()) throw InvalidModel("system '" + name_ + "' has no events");
  std::vector<Command> commands;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto& e = events_[i];
    if (!index_.emplace(e.label, i).second) throw InvalidModel("duplicate event '" + e.label + "' in '" + name_ + "'");
    require_same_space(space_, e.command.space());
    const auto pre = pre_of(e.command);
    if (!pre.is_full())
      throw InvalidModel("event '" + e.label + "' may abort in state " + space_.label(*(~pre).first()));
    const auto conj = conjunctivity_check(e.command, conjunctivity_samples, i);
    if (!conj.conjunctive)
      throw InvalidModel("event '" + e.label + "' is not conjunctive on " + conj.witness->first.to_string() + ", " +
                         conj.witness->second.to_string());
    transitions_.push_back(successor_relation(e.command));
    commands.push_back(e.command);
  }
  whole_ = Command::choice_of(space_, commands);
}

std::vector<std::string> EventSystem::labels() const {
  std::vector<std::string> out;
  for (const auto& e : events_) out.push_back(e.label);
  return out;
}

std::size_t EventSystem::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InvalidModel("unknown event '" + label + "' in '" + name_ + "'");
  return it->second;
}

const Event& EventSystem::event(const std::string& label) const { return events_[index_of(label)]; }

Command EventSystem::choice_of(const std::vector<std::string>& labels) const {
  std::vector<Command> commands;
  for (const auto& l : labels) commands.push_back(event(l).command);
  return Command::choice_of(space_, commands);
}

RefinementPair::RefinementPair(std::string name, EventSystem abstract_system, EventSystem concrete_system,
                               StateRelation gluing, Refines refines)
    : name_(std::move(name)),
      abstract_(std::move(abstract_system)),
      concrete_(std::move(concrete_system)),
      gluing_(std::move(gluing)),
      refines_(std::move(refines)) {
  require_same_space(gluing_.source(), concrete_.space());
  require_same_space(gluing_.target(), abstract_.space());
  if (auto orphan = gluing_.first_orphan())
    throw InvalidModel("gluing not total: concrete state " + concrete_.space().label(*orphan) + " has no image");
  for (const auto& e : concrete_.events()) {
    auto it = refines_.find(e.label);
    if (it == refines_.end()) throw InvalidModel("concrete event '" + e.label + "' has no refines clause");
    if (it->second && !abstract_.has_event(*it->second))
      throw InvalidModel("concrete event '" + e.label + "' refines unknown event '" + *it->second + "'");
  }
  for (const auto& [label, target] : refines_) {
    (void)target;
    if (!concrete_.has_event(label)) throw InvalidModel("refines clause names unknown concrete event '" + label + "'");
  }
  for (const auto& e : abstract_.events())
    if (refiners_of(e.label).empty()) throw InvalidModel("abstract event '" + e.label + "' is not refined");
}

std::vector<std::string> RefinementPair::refiners_of(const std::string& abstract_label) const {
  std::vector<std::string> out;
  for (const auto& e : concrete_.events()) {
    const auto& target = refines_.at(e.label);
    if (target && *target == abstract_label) out.push_back(e.label);
  }
  return out;
}

std::vector<std::string> RefinementPair::new_events() const {
  std::vector<std::string> out;
  for (const auto& e : concrete_.events())
    if (!refines_.at(e.label)) out.push_back(e.label);
  return out;
}

std::optional<std::string> RefinementPair::refined_by(const std::string& concrete_label) const {
  auto it = refines_.find(concrete_label);
  if (it == refines_.end()) throw InvalidModel("unknown concrete event '" + concrete_label + "'");
  return it->second;
}

}  // namespace fairb
