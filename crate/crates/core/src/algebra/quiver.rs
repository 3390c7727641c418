use std::collections::HashSet;

use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
struct ArrowData {
    name: String,
    origin: VertexId,
    terminal: VertexId,
}

/// A finite quiver with named vertices and arrows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<ArrowData>,
}

impl Quiver {
    pub fn new() -> Self {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, AlgebraError> {
        if self.vertex_by_name(name).is_some() || self.arrow_by_name(name).is_some() {
            return Err(AlgebraError::DuplicateName(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(VertexId(self.vertices.len() - 1))
    }

    pub fn add_arrow(&mut self, name: &str, origin: VertexId, terminal: VertexId) -> Result<ArrowId, AlgebraError> {
        if self.vertex_by_name(name).is_some() || self.arrow_by_name(name).is_some() {
            return Err(AlgebraError::DuplicateName(name.to_string()));
        }
        for v in [origin, terminal] {
            if v.0 >= self.vertices.len() {
                return Err(AlgebraError::UnknownVertex(v.0.to_string()));
            }
        }
        if self.arrows.len() >= u16::MAX as usize {
            return Err(AlgebraError::TooManyArrows);
        }
        self.arrows.push(ArrowData {
            name: name.to_string(),
            origin,
            terminal,
        });
        Ok(ArrowId(self.arrows.len() - 1))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn endpoints(&self, a: ArrowId) -> (VertexId, VertexId) {
        let data = &self.arrows[a.0];
        (data.origin, data.terminal)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub(crate) fn check_names(&self) -> Result<(), AlgebraError> {
        let mut seen = HashSet::new();
        for name in self.vertices.iter().chain(self.arrows.iter().map(|a| &a.name)) {
            if !seen.insert(name) {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
        }
        Ok(())
    }
}
