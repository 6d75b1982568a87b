//! Group models whose involutions form interesting involutory quandles.
//!
//! [`semidirect`] realises `Z/n ⋊ G` with `G` acting through a sign character,
//! a finite stand-in for the profinite integers twisted by a Galois group.
//! [`ev`] is the exact word group `F₂{ρ} ⋉ F₂{σ, τ}` where `ρ` swaps the other
//! two generators; its involution quandle satisfies `ρ ▷ σ = τ`.

pub mod ev;
pub mod semidirect;
